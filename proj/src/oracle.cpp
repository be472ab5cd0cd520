#include "qes/oracle.hpp"

#include "parallel.hpp"
#include "qes/fourier.hpp"
#include "qes/support.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qes {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double eps(int i) { return i == 1 ? 1.0 : -1.0; }

void check_index(int i)
{
    if (i != 1 && i != 2)
        throw Error("block index must be 1 or 2");
}

double sinc(double u)
{
    return std::abs(u) < 1e-4 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
}

double varpi_of(double k, double p)
{
    return std::sqrt(std::max(0.0, (k - p) * (k + p)));
}

void check_oracle_potential(const Potential& v)
{
    for (const auto& t : v.terms())
        if (!t.x.transformable() || !t.y.transformable())
            throw Error("oracle needs decaying factors in both x and y (non-transformable factor)");
}

// C_t(a, b) = z_t / (2 pi) * yf_t~(p_a - p_b)
std::vector<Matrix> y_kernels(const Potential& v, const NodeSet& nodes)
{
    const int na = nodes.size();
    std::vector<Matrix> out;
    for (const auto& t : v.terms()) {
        Matrix c(na, na);
        for (int a = 0; a < na; ++a)
            for (int b = 0; b < na; ++b)
                c(a, b) = t.coupling / (2.0 * kPi) * ft1d_closed(t.y, nodes.p[a] - nodes.p[b]);
        out.push_back(std::move(c));
    }
    return out;
}

Matrix quad_submatrix(const Matrix& stacked, const NodeSet& nodes, int i, int j)
{
    const int na = nodes.size();
    return stacked.block((i - 1) * na, (j - 1) * na, nodes.quad, nodes.quad);
}

double spectral_norm(const Matrix& m)
{
    if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0)
        return 0.0;
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Eigen::VectorXd sqrt_weights(const NodeSet& nodes)
{
    Eigen::VectorXd s(nodes.quad);
    for (int a = 0; a < nodes.quad; ++a)
        s(a) = std::sqrt(nodes.w[a]);
    return s;
}

} // namespace

MomentumGrid make_grid(double k, int n)
{
    if (n < 8)
        throw Error("make_grid: need N >= 8, got " + std::to_string(n));
    if (!(k > 0.0))
        throw Error("make_grid: k must be positive");
    MomentumGrid g;
    g.k = k;
    g.rule = gauss_legendre(n);
    for (int m = 0; m < n; ++m) {
        const double gamma = 0.5 * kPi * g.rule.nodes[m];
        g.gamma.push_back(gamma);
        g.p.push_back(k * std::sin(gamma));
        g.varpi.push_back(k * std::cos(gamma));
        g.w.push_back(k * std::cos(gamma) * 0.5 * kPi * g.rule.weights[m]);
    }
    return g;
}

std::optional<int> NodeSet::find(double q) const
{
    const double tol = 1e-14 * k;
    for (int a = size() - 1; a >= 0; --a)
        if (std::abs(p[a] - q) <= tol)
            return a;
    return std::nullopt;
}

NodeSet collocation_nodes(const MomentumGrid& g, const std::vector<double>& probes)
{
    NodeSet s;
    s.k = g.k;
    s.quad = g.size();
    s.p = g.p;
    s.w = g.w;
    s.varpi = g.varpi;
    for (double q : probes) {
        if (!(std::abs(q) < g.k))
            throw Error("probe momentum outside (-k, k)");
        if (s.find(q))
            continue;
        s.p.push_back(q);
        s.w.push_back(0.0);
        s.varpi.push_back(varpi_of(g.k, q));
    }
    return s;
}

Matrix v_op(const Potential& v, double x, const MomentumGrid& g)
{
    const int n = g.size();
    Matrix a(n, n);
    for (int m = 0; m < n; ++m)
        for (int j = 0; j < n; ++j)
            a(m, j) = partial_ft_y(v, x, g.p[m] - g.p[j]) * g.w[j] / (2.0 * kPi);
    return a;
}

Matrix h_op(const Potential& v, double x, const MomentumGrid& g, int i, int j)
{
    check_index(i);
    check_index(j);
    Matrix h = v_op(v, x, g);
    const int n = g.size();
    for (int m = 0; m < n; ++m) {
        const Complex left = eps(i) * std::exp(-kI * (eps(i) * g.varpi[m] * x)) / (2.0 * g.varpi[m]);
        for (int c = 0; c < n; ++c)
            h(m, c) *= left * std::exp(kI * (eps(j) * g.varpi[c] * x));
    }
    return h;
}

Matrix TransferMatrixNum::kernel_block(int i, int j) const
{
    check_index(i);
    check_index(j);
    const int na = nodes.size();
    return kernel.block((i - 1) * na, (j - 1) * na, na, na);
}

Matrix TransferMatrixNum::block(int i, int j) const
{
    Matrix b = quad_submatrix(kernel, nodes, i, j);
    for (int c = 0; c < nodes.quad; ++c)
        b.col(c) *= nodes.w[c];
    if (i == j)
        b += Matrix::Identity(nodes.quad, nodes.quad);
    return b;
}

TransferMatrixNum dyson(const Potential& v, const MomentumGrid& g, const std::vector<double>& probes,
                        const SliceSpec& slices, int order, double tol)
{
    if (order < 1 || order > 3)
        throw Error("dyson: order " + std::to_string(order) + " unsupported (1..3)");
    if (slices.nx < 1)
        throw Error("dyson: need at least one x slice");
    check_oracle_potential(v);

    TransferMatrixNum m;
    m.nodes = collocation_nodes(g, probes);
    m.order = order;
    m.nx = slices.nx;
    const NodeSet& nodes = m.nodes;
    const int na = nodes.size();
    const auto c = y_kernels(v, nodes);
    const auto& terms = v.terms();

    // First order: x integrated per entry,
    //   -i e_i / (4 pi varpi_a) sum_t z_t xf~(e_i varpi_a - e_j varpi_b) yf~(p_a - p_b).
    Matrix k1 = Matrix::Zero(2 * na, 2 * na);
    detail::parallel_for(na, [&](long a) {
        for (int b = 0; b < na; ++b)
            for (std::size_t t = 0; t < terms.size(); ++t) {
                const Complex y = c[t](a, b);
                if (y == Complex(0.0))
                    continue;
                for (int i = 1; i <= 2; ++i)
                    for (int j = 1; j <= 2; ++j) {
                        const double kx = eps(i) * nodes.varpi[a] - eps(j) * nodes.varpi[b];
                        const Complex x = ft1d_numeric(terms[t].x, kx, tol).value;
                        k1((i - 1) * na + a, (j - 1) * na + b) += -kI * eps(i) / (2.0 * nodes.varpi[a]) * x * y;
                    }
            }
    });
    m.terms.push_back(k1);

    if (order >= 2) {
        double scale = slices.scale;
        for (const auto& t : terms)
            if (slices.scale <= 0.0)
                scale = std::max(scale, t.x.base()->scale);
        if (!(scale > 0.0))
            scale = 1.0;
        m.x_scale = scale;

        std::vector<int> qidx;
        Eigen::VectorXd wq(2 * nodes.quad);
        for (int i = 0; i < 2; ++i)
            for (int b = 0; b < nodes.quad; ++b) {
                wq(qidx.size()) = nodes.w[b];
                qidx.push_back(i * na + b);
            }

        Matrix p1 = Matrix::Zero(2 * na, 2 * na);
        Matrix p2 = p1;
        Matrix p3 = p1;
        Matrix h(2 * na, 2 * na);
        Eigen::VectorXcd left(2 * na), right(2 * na);
        const double dt = kPi / slices.nx;
        for (int s = 0; s < slices.nx; ++s) {
            const double ts = -0.5 * kPi + (s + 0.5) * dt;
            const double x = scale * std::tan(ts);
            const double cs = std::cos(ts);
            const double dx = scale * dt / (cs * cs);

            // Filon midpoint: the base factors are frozen across the slice while
            // every phase exp(-i K x), K = e_i varpi_a - e_j varpi_b - beta_t, is
            // integrated exactly.  Wide tail slices would otherwise alias it.
            for (int i = 1; i <= 2; ++i)
                for (int r = 0; r < na; ++r) {
                    const double e = eps(i), vp = nodes.varpi[r];
                    left((i - 1) * na + r) = e * std::exp(-kI * (e * vp * x)) / (2.0 * vp);
                    right((i - 1) * na + r) = std::exp(kI * (e * vp * x));
                }
            h.setZero();
            for (std::size_t t = 0; t < terms.size(); ++t) {
                const Complex amp = terms[t].x(x);
                const double beta = terms[t].x.phase();
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        for (int b = 0; b < na; ++b) {
                            const Complex rb = amp * right(j * na + b);
                            for (int r = 0; r < na; ++r) {
                                const Complex cv = c[t](r, b);
                                if (cv == Complex(0.0))
                                    continue;
                                const double kx = eps(i + 1) * nodes.varpi[r] - eps(j + 1) * nodes.varpi[b] - beta;
                                h(i * na + r, j * na + b) += left(i * na + r) * cv * rb * sinc(0.5 * kx * dx);
                            }
                        }
            }

            // Slice propagator exp(-i dx H W) applied on the left, truncated by
            // order.  Probe columns carry zero weight, so the inner index runs
            // over quadrature nodes only.
            const Complex step(0.0, -dx);
            const Matrix hw = h(Eigen::all, qidx) * wq.asDiagonal();
            if (order >= 3)
                p3 += step * hw *
                      (p2(qidx, Eigen::all) +
                       0.5 * step * hw * (p1(qidx, Eigen::all) + step / 3.0 * h(qidx, Eigen::all)));
            p2 += step * hw * (p1(qidx, Eigen::all) + 0.5 * step * h(qidx, Eigen::all));
            p1 += step * h;
        }
        m.sliced_first = p1;
        m.terms.push_back(p2);
        if (order >= 3)
            m.terms.push_back(p3);
    }

    m.kernel = m.terms[0];
    for (std::size_t o = 1; o < m.terms.size(); ++o)
        m.kernel += m.terms[o];
    return m;
}

TransferMatrixNum first_order_M(const Potential& v, const MomentumGrid& g, const std::vector<double>& probes,
                                double alpha)
{
    const SupportCertificate cert = analyze_support(v, alpha);
    if (!cert.cond_y_halfline || g.k > alpha * (1.0 + 1e-12))
        throw Error("exactness preconditions unmet: need the y half-line condition and k <= alpha");
    check_oracle_potential(v);

    TransferMatrixNum m;
    m.nodes = collocation_nodes(g, probes);
    m.order = 1;
    const NodeSet& nodes = m.nodes;
    const int na = nodes.size();
    Matrix k1 = Matrix::Zero(2 * na, 2 * na);
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 2; ++j) {
                    const double kx = eps(i) * nodes.varpi[a] - eps(j) * nodes.varpi[b];
                    k1((i - 1) * na + a, (j - 1) * na + b) =
                        -kI * eps(i) / (4.0 * kPi * nodes.varpi[a]) * ft2d(v, kx, nodes.p[a] - nodes.p[b]);
                }
    m.terms.push_back(k1);
    m.kernel = k1;
    return m;
}

Complex first_order_apply(const Potential& v, double k, double alpha, int i, int j,
                          const std::function<Complex(double)>& xi, double p, int nq)
{
    check_index(i);
    check_index(j);
    if (k + p <= alpha)
        return 0.0;
    const GaussRule r = gauss_legendre(nq, alpha, k + p);
    const double vp = varpi_of(k, p);
    Complex sum = 0.0;
    for (int m = 0; m < nq; ++m) {
        const double q = r.nodes[m];
        const double kx = eps(i) * vp - eps(j) * varpi_of(k, p - q);
        sum += ft2d(v, kx, q) * xi(p - q) * r.weights[m];
    }
    return -kI * eps(i) / (4.0 * kPi * vp) * sum;
}

TFunctions solve_T(const TransferMatrixNum& m, const GaussRule& rule, const IncidenceSpec& inc)
{
    validate(inc);
    const NodeSet& nodes = m.nodes;
    if (std::abs(inc.k - nodes.k) > 1e-12 * nodes.k)
        throw Error("solve_T: incidence wavenumber differs from the grid's");
    const double p0 = inc.k * std::sin(inc.theta0);
    const auto src = nodes.find(p0);
    if (!src)
        throw Error("solve_T: source momentum is not a node; register k sin(theta0) as a probe");

    const int na = nodes.size();
    const int n = nodes.quad;
    const Matrix b11 = m.kernel_block(1, 1), b12 = m.kernel_block(1, 2);
    const Matrix b21 = m.kernel_block(2, 1), b22 = m.kernel_block(2, 2);

    // Delta parts cancel identically: every M_ij - delta_ij is an integral operator.
    const Eigen::VectorXcd rhs = -2.0 * kPi * (inc.side == Side::Left ? b21.col(*src) : b22.col(*src));
    Eigen::VectorXd w(n);
    for (int a = 0; a < n; ++a)
        w(a) = nodes.w[a];

    Matrix sys = Matrix::Identity(n, n) + b22.topLeftCorner(n, n) * w.asDiagonal();
    Eigen::PartialPivLU<Matrix> lu(sys);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-13))
        throw Error("M22 not invertible on grid (rcond " + std::to_string(rcond) +
                    "): either a spectral singularity of the potential or a discretization artifact");
    const Eigen::VectorXcd tq = lu.solve(rhs.head(n));
    const Eigen::VectorXcd wt = w.asDiagonal() * tq;

    Eigen::VectorXcd tm = rhs - b22.leftCols(n) * wt;
    tm.head(n) = tq;
    const Eigen::VectorXcd tp =
        b12.leftCols(n) * wt + 2.0 * kPi * (inc.side == Side::Left ? b11.col(*src) : b12.col(*src));

    TFunctions t;
    t.side = inc.side;
    t.k = inc.k;
    t.p0 = p0;
    t.nodes = nodes;
    t.rule = rule;
    t.minus.assign(tm.data(), tm.data() + na);
    t.plus.assign(tp.data(), tp.data() + na);
    t.delta_minus = 0.0;
    t.delta_plus = 0.0;
    return t;
}

Complex amplitude_from_T(const TFunctions& t, double theta)
{
    const double c = std::cos(theta);
    if (std::abs(c) < kGrazingCutoff)
        throw Error("grazing direction: |cos(theta)| below cutoff");
    const double p = t.k * std::sin(theta);
    const auto& vals = c < 0.0 ? t.minus : t.plus;
    const Complex pref(0.0, -1.0 / std::sqrt(2.0 * kPi));
    if (const auto idx = t.nodes.find(p))
        return pref * t.k * std::abs(c) * vals[*idx];

    // varpi t is smooth in gamma; interpolate it on the Gauss nodes.
    std::vector<Complex> smooth(t.nodes.quad);
    for (int a = 0; a < t.nodes.quad; ++a)
        smooth[a] = t.nodes.varpi[a] * vals[a];
    const double u = std::asin(std::clamp(p / t.k, -1.0, 1.0)) * 2.0 / kPi;
    return pref * barycentric_eval(t.rule, smooth, u);
}

double weighted_norm(const Matrix& stacked, const NodeSet& nodes)
{
    const int n = nodes.quad;
    const Eigen::VectorXd s = sqrt_weights(nodes);
    Matrix m(2 * n, 2 * n);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            m.block((i - 1) * n, (j - 1) * n, n, n) =
                s.asDiagonal() * quad_submatrix(stacked, nodes, i, j) * s.asDiagonal();
    return spectral_norm(m);
}

double thm2_max_product(const TransferMatrixNum& m)
{
    const double total = weighted_norm(m.kernel, m.nodes);
    if (total == 0.0)
        return 0.0;
    const Eigen::VectorXd s = sqrt_weights(m.nodes);
    Matrix half[2][2];
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            half[i - 1][j - 1] = s.asDiagonal() * quad_submatrix(m.kernel, m.nodes, i, j) * s.asDiagonal();
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            worst = std::max(worst, spectral_norm(half[a / 2][a % 2] * half[b / 2][b % 2]));
    return worst / (total * total);
}

OracleReport run_oracle(const Potential& v, double k, double alpha, const OracleOptions& opt)
{
    OracleReport r;
    r.k = k;
    r.alpha = alpha;
    r.n = opt.n;
    r.nx = opt.nx;
    if (opt.n < 64)
        r.warnings.push_back("N < 64: momentum grid likely unconverged");

    const MomentumGrid g = make_grid(k, opt.n);
    const IncidenceSpec inc{Side::Right, opt.theta0_right, k};
    std::vector<double> probes{k * std::sin(opt.theta0_right)};
    std::vector<double> thetas;
    for (int j = 0; j < opt.n_theta; ++j) {
        const double th = 2.0 * kPi * (j + 0.5) / opt.n_theta;
        if (std::abs(std::cos(th)) < kGrazingCutoff)
            continue;
        thetas.push_back(th);
        probes.push_back(k * std::sin(th));
    }

    const TransferMatrixNum m = dyson(v, g, probes, {opt.nx, 0.0}, opt.order, opt.ft_tol);
    const double n1 = weighted_norm(m.terms[0], m.nodes);
    if (m.terms.size() > 1) {
        const double n2 = weighted_norm(m.terms[1], m.nodes);
        r.order2_rel_norm = n2 == 0.0 ? 0.0 : n2 / n1;
        const double ds = weighted_norm(m.sliced_first - m.terms[0], m.nodes);
        r.sliced_first_rel_error = ds == 0.0 ? 0.0 : ds / n1;
    }
    r.thm2_max_product_norm = thm2_max_product(m);

    const TFunctions t = solve_T(m, g.rule, inc);
    for (double th : thetas)
        r.max_abs_fr = std::max(r.max_abs_fr, std::abs(amplitude_from_T(t, th)));
    return r;
}

} // namespace qes
