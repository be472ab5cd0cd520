#include "internal.hpp"

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qes::cli {

double resolve_tolerance()
{
    const char* env = std::getenv("QES_TOL");
    if (!env || !*env)
        return 1e-8;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
        throw Error(std::string("QES_TOL must be a positive number, got \"") + env + "\"");
    return v;
}

Config::Config(Json j) : input_(std::move(j)), resolved_(Json::object())
{
    if (!input_.is_object())
        throw Error("config: top level must be a JSON object");
}

bool Config::has(const char* key) const
{
    return input_.contains(key);
}

double Config::number(const char* key, double fallback)
{
    const double v = has(key) ? number(key) : fallback;
    resolved_[key] = v;
    return v;
}

double Config::number(const char* key)
{
    if (!has(key) || !input_.at(key).is_number())
        throw Error(std::string("config: \"") + key + "\" must be a number");
    const double v = input_.at(key).get<double>();
    resolved_[key] = v;
    return v;
}

int Config::integer(const char* key, int fallback)
{
    int v = fallback;
    if (has(key)) {
        if (!input_.at(key).is_number_integer())
            throw Error(std::string("config: \"") + key + "\" must be an integer");
        v = input_.at(key).get<int>();
    }
    resolved_[key] = v;
    return v;
}

std::string Config::text(const char* key, const std::string& fallback)
{
    std::string v = fallback;
    if (has(key)) {
        if (!input_.at(key).is_string())
            throw Error(std::string("config: \"") + key + "\" must be a string");
        v = input_.at(key).get<std::string>();
    }
    resolved_[key] = v;
    return v;
}

std::vector<double> Config::numbers(const char* key)
{
    if (!has(key))
        throw Error(std::string("config: missing \"") + key + "\"");
    const Json& j = input_.at(key);
    std::vector<double> out;
    if (j.is_number()) {
        out.push_back(j.get<double>());
    } else if (j.is_array()) {
        for (const auto& x : j) {
            if (!x.is_number())
                throw Error(std::string("config: \"") + key + "\" must hold numbers");
            out.push_back(x.get<double>());
        }
    } else {
        throw Error(std::string("config: \"") + key + "\" must be a number or an array of numbers");
    }
    if (out.empty())
        throw Error(std::string("config: \"") + key + "\" is empty");
    resolved_[key] = out;
    return out;
}

const Json& Config::raw(const char* key) const
{
    if (!has(key))
        throw Error(std::string("config: missing \"") + key + "\"");
    return input_.at(key);
}

void Config::record(const char* key, Json value)
{
    resolved_[key] = std::move(value);
}

void Config::allow(std::initializer_list<const char*> keys) const
{
    require_keys(input_, keys, "config");
}

Json load_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("malformed JSON in " + path.string() + ": " + e.what());
    }
}

Side parse_side(const std::string& s)
{
    if (s == "left")
        return Side::Left;
    if (s == "right")
        return Side::Right;
    throw Error("config: side must be \"left\" or \"right\", got \"" + s + "\"");
}

std::string side_name(Side s)
{
    return s == Side::Left ? "left" : "right";
}

namespace {

double field(const Json& j, const char* key, const char* what)
{
    if (!j.contains(key) || !j.at(key).is_number())
        throw Error(std::string(what) + ": missing numeric \"" + key + "\"");
    return j.at(key).get<double>();
}

int int_field(const Json& j, const char* key, const char* what)
{
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw Error(std::string(what) + ": missing integer \"" + key + "\"");
    return j.at(key).get<int>();
}

Potential parse_w(const Json& j, Ingredient side, const char* what)
{
    require_keys(j, {"z", "Lx", "nx", "Ly", "ny"}, what);
    if (!j.contains("z"))
        throw Error(std::string(what) + ": missing \"z\"");
    return build_w(side, complex_from_json(j.at("z"), what), field(j, "Lx", what), int_field(j, "nx", what),
                   field(j, "Ly", what), int_field(j, "ny", what));
}

} // namespace

PermittivityProfile parse_profile(const Json& j, Json* resolved)
{
    require_keys(j, {"z", "a_um", "b_um", "alpha_rad_per_um", "eps_inf_rel"}, "permittivity profile");
    PermittivityProfile p;
    p.z = j.contains("z") ? complex_from_json(j.at("z"), "profile z") : Complex(1.0, 0.0);
    p.a = j.contains("a_um") ? field(j, "a_um", "profile") : 1.0;
    p.b = j.contains("b_um") ? field(j, "b_um", "profile") : 1.0;
    p.alpha = j.contains("alpha_rad_per_um") ? field(j, "alpha_rad_per_um", "profile") : 4.0 * std::numbers::pi;
    p.eps_inf_rel = j.contains("eps_inf_rel") ? field(j, "eps_inf_rel", "profile") : 1.0;
    example_permittivity(p.z, p.a, p.b, p.alpha); // validates
    if (!(p.eps_inf_rel > 0.0))
        throw Error("permittivity profile: eps_inf_rel must be positive");
    if (resolved)
        *resolved = {{"z", to_json(p.z)},
                     {"a_um", p.a},
                     {"b_um", p.b},
                     {"alpha_rad_per_um", p.alpha},
                     {"eps_inf_rel", p.eps_inf_rel}};
    return p;
}

ScattererSpec parse_scatterer(const Json& j, double alpha)
{
    require_keys(j, {"potential", "family", "permittivity"}, "scatterer");
    if (j.size() != 1)
        throw Error("scatterer: give exactly one of \"potential\", \"family\", \"permittivity\"");
    ScattererSpec s;
    if (j.contains("potential")) {
        const Potential v = potential_from_json(j.at("potential"));
        s.scatterer = Scatterer(v);
        s.resolved = {{"potential", to_json(v)}};
    } else if (j.contains("family")) {
        const Json& f = j.at("family");
        require_keys(f, {"kind", "gamma", "w_minus", "w_plus"}, "family");
        if (!f.contains("kind") || !f.at("kind").is_string())
            throw Error("family: missing \"kind\" (\"vl\" or \"vr\")");
        const std::string kind = f.at("kind");
        if (kind != "vl" && kind != "vr")
            throw Error("family: kind must be \"vl\" or \"vr\"");
        const int g = f.contains("gamma") ? int_field(f, "gamma", "family") : 0;
        if (g != 0 && g != 1)
            throw Error("family: gamma must be 0 or 1");
        if (!f.contains("w_minus") || !f.contains("w_plus"))
            throw Error("family: needs \"w_minus\" and \"w_plus\"");
        const Potential wm = parse_w(f.at("w_minus"), Ingredient::Minus, "w_minus");
        const Potential wp = parse_w(f.at("w_plus"), Ingredient::Plus, "w_plus");
        const Gamma gamma = g ? Gamma::One : Gamma::Zero;
        const Potential v = kind == "vl" ? build_vl(wm, wp, alpha, gamma) : build_vr(wm, wp, alpha, gamma);
        s.scatterer = Scatterer(v);
        Json fr = f;
        fr["gamma"] = g;
        s.resolved = {{"family", fr}};
    } else {
        Json pr;
        s.profile = parse_profile(j.at("permittivity"), &pr);
        s.scatterer = dispersive_scatterer(*s.profile);
        s.resolved = {{"permittivity", pr}};
    }
    return s;
}

} // namespace qes::cli
