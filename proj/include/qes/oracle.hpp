#pragma once

#include "qes/born.hpp"
#include "qes/gauss_legendre.hpp"
#include "qes/potentials.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qes {

using Matrix = Eigen::MatrixXcd;

/// Gauss-Legendre nodes in gamma on (-pi/2, pi/2), p = k sin(gamma).
struct MomentumGrid {
    double k = 0.0;
    GaussRule rule; ///< in u = 2 gamma / pi
    std::vector<double> gamma;
    std::vector<double> p;
    std::vector<double> w;     ///< includes the Jacobian k cos(gamma)
    std::vector<double> varpi; ///< sqrt(k^2 - p^2) = k cos(gamma)

    int size() const { return static_cast<int>(p.size()); }
};

MomentumGrid make_grid(double k, int n);

/// Quadrature nodes followed by zero-weight probe momenta.  Kernels are
/// evaluated at every node, so probe rows and columns give the operators'
/// kernels directly at source and target momenta (Nystrom interpolation).
struct NodeSet {
    double k = 0.0;
    int quad = 0;
    std::vector<double> p;
    std::vector<double> w;
    std::vector<double> varpi;

    int size() const { return static_cast<int>(p.size()); }
    /// Index of the node at momentum p (probes first, then quadrature nodes).
    std::optional<int> find(double p) const;
};

/// Probes are deduplicated; |p| must stay below k.
NodeSet collocation_nodes(const MomentumGrid& g, const std::vector<double>& probes);

/// [A]_mn = (1/2pi) v~(x, p_m - p_n) w_n
Matrix v_op(const Potential& v, double x, const MomentumGrid& g);
/// diag(e_i exp(-i e_i varpi x) / 2 varpi) A diag(exp(i e_j varpi x)), e_i = (-1)^{i-1}
Matrix h_op(const Potential& v, double x, const MomentumGrid& g, int i, int j);

struct SliceSpec {
    int nx = 400;
    /// x = scale tan(t) with t on a midpoint grid over (-pi/2, pi/2); 0 picks
    /// the largest x-scale among the terms.
    double scale = 0.0;
};

/// Kernels of M_ij - delta_ij I on a node set, stacked as [[11, 12], [21, 22]].
struct TransferMatrixNum {
    NodeSet nodes;
    int order = 0;
    Matrix kernel;
    std::vector<Matrix> terms; ///< terms[m-1]: order-m contribution
    /// -i sum_s dx_s H(x_s): the first order redone on the slicing grid.
    Matrix sliced_first;
    double x_scale = 0.0;
    int nx = 0;

    Matrix kernel_block(int i, int j) const;
    /// M_ij acting on quadrature samples: delta_ij I + K_ij W.
    Matrix block(int i, int j) const;
};

/// Time-ordered series up to `order` (1..3).  The first order integrates x
/// exactly per kernel entry (double-exponential Fourier quadrature); higher
/// orders use midpoint slicing in x accumulated in ascending x.
TransferMatrixNum dyson(const Potential& v, const MomentumGrid& g, const std::vector<double>& probes,
                        const SliceSpec& slices, int order, double tol = 1e-12);

/// (M_ij - delta_ij) from the closed 2D transform; no x integration.
/// Requires the y half-line condition and k <= alpha.
TransferMatrixNum first_order_M(const Potential& v, const MomentumGrid& g, const std::vector<double>& probes,
                                double alpha);

/// [(M_ij - delta_ij) xi](p) with a Gauss rule of nq nodes over q in [alpha, k + p].
Complex first_order_apply(const Potential& v, double k, double alpha, int i, int j,
                          const std::function<Complex(double)>& xi, double p, int nq);

/// T = 2 pi c delta(p - p0) + t(p), t sampled on the node set.
struct TFunctions {
    Side side = Side::Left;
    double k = 0.0;
    double p0 = 0.0;
    NodeSet nodes;
    GaussRule rule;
    std::vector<Complex> minus;
    std::vector<Complex> plus;
    Complex delta_minus;
    Complex delta_plus;
};

TFunctions solve_T(const TransferMatrixNum& m, const GaussRule& rule, const IncidenceSpec& inc);

inline constexpr double kGrazingCutoff = 1e-3;

/// -i k |cos t| / sqrt(2 pi) T_-+(k sin t); smooth part only.
Complex amplitude_from_T(const TFunctions& t, double theta);

/// Spectral norm of W^{1/2} K W^{1/2} over the quadrature nodes.
double weighted_norm(const Matrix& stacked_kernel, const NodeSet& nodes);
/// max over the 16 block pairs of |K_ij W K_i'j'| / |K|^2 (0 when K = 0).
double thm2_max_product(const TransferMatrixNum& m);

struct OracleOptions {
    int n = 96;
    int nx = 400;
    int order = 2;
    double theta0_right = 1.25 * 3.14159265358979323846;
    int n_theta = 32;
    double ft_tol = 1e-12;
};

struct OracleReport {
    double k = 0.0;
    double alpha = 0.0;
    int n = 0;
    int nx = 0;
    double order2_rel_norm = 0.0;
    double thm2_max_product_norm = 0.0;
    double max_abs_fr = 0.0;
    double sliced_first_rel_error = 0.0;
    std::vector<std::string> warnings;
};

OracleReport run_oracle(const Potential& v, double k, double alpha, const OracleOptions& opt);

} // namespace qes
