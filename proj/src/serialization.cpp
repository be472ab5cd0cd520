#include "qes/serialization.hpp"

#include <string>

namespace qes {

void require_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what)
{
    if (!j.is_object())
        throw Error(std::string(what) + ": expected a JSON object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || item.key() == a;
        if (!ok)
            throw Error(std::string(what) + ": unknown key \"" + item.key() + "\"");
    }
}

Complex complex_from_json(const Json& j, const char* what)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(std::string(what) + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(Complex z)
{
    return Json::array({z.real(), z.imag()});
}

namespace {

double number(const Json& j, const char* key, const char* what)
{
    if (!j.contains(key) || !j.at(key).is_number())
        throw Error(std::string(what) + ": missing numeric \"" + key + "\"");
    return j.at(key).get<double>();
}

Factor1D factor_from_json(const Json& j)
{
    require_keys(j, {"kind", "L", "n", "beta"}, "factor");
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw Error("factor: missing \"kind\"");
    const std::string kind = j.at("kind");
    const double beta = j.contains("beta") ? number(j, "beta", "factor") : 0.0;
    if (kind == "const") {
        if (j.contains("L") || j.contains("n"))
            throw Error("factor: const takes only \"beta\"");
        return Factor1D::constant(beta);
    }
    if (kind != "g" && kind != "gbar")
        throw Error("factor: unknown kind \"" + kind + "\"");
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw Error("factor: missing integer \"n\"");
    const double scale = number(j, "L", "factor");
    const int order = j.at("n").get<int>();
    return kind == "g" ? Factor1D::plus(scale, order, beta) : Factor1D::minus(scale, order, beta);
}

Json factor_to_json(const Factor1D& f)
{
    Json j;
    if (!f.base()) {
        j["kind"] = "const";
    } else {
        j["kind"] = f.base()->side == HalfLine::Plus ? "g" : "gbar";
        j["L"] = f.base()->scale;
        j["n"] = f.base()->order;
    }
    j["beta"] = f.phase();
    return j;
}

} // namespace

Potential potential_from_json(const Json& j)
{
    require_keys(j, {"terms"}, "potential");
    if (!j.contains("terms") || !j.at("terms").is_array())
        throw Error("potential: missing \"terms\" array");
    std::vector<SeparableTerm> terms;
    for (const auto& t : j.at("terms")) {
        require_keys(t, {"z", "xf", "yf"}, "term");
        if (!t.contains("z") || !t.contains("xf") || !t.contains("yf"))
            throw Error("term: needs \"z\", \"xf\" and \"yf\"");
        terms.push_back({complex_from_json(t.at("z"), "term z"), factor_from_json(t.at("xf")),
                         factor_from_json(t.at("yf"))});
    }
    return Potential(std::move(terms));
}

Json to_json(const Potential& v)
{
    Json terms = Json::array();
    for (const auto& t : v.terms())
        terms.push_back({{"z", to_json(t.coupling)}, {"xf", factor_to_json(t.x)}, {"yf", factor_to_json(t.y)}});
    return {{"terms", terms}};
}

Json to_json(const SupportCertificate& c)
{
    return {{"alpha", c.alpha},
            {"cond_y_halfline", c.cond_y_halfline},
            {"cond_x_left", c.cond_x_left},
            {"cond_x_right", c.cond_x_right},
            {"nonvanish_left_band", c.nonvanish_left_band},
            {"nonvanish_right_band", c.nonvanish_right_band},
            {"numeric_residual", c.numeric_residual}};
}

Json to_json(const InvisibilityVerdict& v)
{
    return {{"band", Json::array({v.k_lo, v.k_hi})},
            {"side", to_string(v.side)},
            {"unidirectional", v.unidirectional},
            {"evidence", to_json(v.evidence)}};
}

Json to_json(const VerifyReport& r)
{
    return {{"verdict", to_json(r.verdict)},
            {"invisible_max_abs_f", r.invisible_max_abs_f},
            {"visible_inside_max_abs_f", r.visible_inside_max_abs_f},
            {"visible_outside_max_abs_f", r.visible_outside_max_abs_f},
            {"peak_abs_f", r.peak_abs_f},
            {"visible_positive", r.visible_positive},
            {"samples", r.samples}};
}

Json to_json(const OracleReport& r)
{
    return {{"k", r.k},
            {"alpha", r.alpha},
            {"N", r.n},
            {"Nx", r.nx},
            {"order2_rel_norm", r.order2_rel_norm},
            {"thm2_max_product_norm", r.thm2_max_product_norm},
            {"max_abs_fr", r.max_abs_fr},
            {"sliced_first_rel_error", r.sliced_first_rel_error},
            {"warnings", r.warnings}};
}

} // namespace qes
