#include "ccr/serialization.hpp"

#include <cmath>
#include <fstream>

#include "ccr/errors.hpp"

namespace ccr {

namespace {

Vec3 vec3_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ParseError(std::string(what) + " must be an array of 3 numbers");
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

// JSON has no inf/nan; encode them as strings.
json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

}  // namespace

json to_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw ParseError("complex value must be [re, im]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json to_json(const GroupElement& g) {
    if (const auto* r = std::get_if<RotationElement>(&g))
        return {{"kind", "rotation"}, {"params", {{"angle", r->angle}}}};
    const auto& b = std::get<BHPElement>(g);
    return {{"kind", "bhp"}, {"params", {{"n", b.n}, {"alpha", b.alpha}, {"beta", b.beta}}}};
}

GroupElement group_element_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    const json& p = j.at("params");
    if (kind == "rotation") return make_rotation(p.at("angle").get<double>());
    if (kind == "bhp")
        return BHPElement{p.value("n", 0L), p.value("alpha", 0.0), p.value("beta", 0.0)};
    throw ParseError("unknown group element kind '" + kind + "'");
}

json to_json(const GaussianPacket& p) {
    return {{"center", p.center}, {"width", p.width}, {"coeff", to_json(p.coeff)}};
}

json to_json(const TransformedPacket& t) {
    json j = to_json(t.base);
    json actions = json::array();
    for (const auto& g : t.actions) actions.push_back(to_json(g));
    j["actions"] = actions;
    return j;
}

TransformedPacket packet_from_json(const json& j) {
    TransformedPacket t;
    t.base.center = vec3_from_json(j.at("center"), "center");
    t.base.width = vec3_from_json(j.at("width"), "width");
    t.base.coeff = j.contains("coeff") ? complex_from_json(j.at("coeff")) : cplx(1.0, 0.0);
    if (j.contains("actions"))
        for (const auto& a : j.at("actions")) t.actions.push_back(group_element_from_json(a));
    return t;
}

json to_json(const FieldVector& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) terms.push_back(to_json(t));
    return {{"mass", f.mass()}, {"s0", f.in_s0()}, {"terms", terms}};
}

FieldVector field_from_json(const json& j) {
    try {
        std::vector<TransformedPacket> terms;
        for (const auto& t : j.at("terms")) terms.push_back(packet_from_json(t));
        FieldVector f(j.value("mass", 0.0), std::move(terms));
        if (j.value("s0", false)) return f.marked_s0();
        return f;
    } catch (const json::exception& e) {
        throw ParseError(std::string("field: ") + e.what());
    } catch (const DomainError& e) {
        throw ParseError(std::string("field: ") + e.what());
    }
}

json to_json(const QuadratureConfig& q) {
    return {{"rel_tol", q.rel_tol},           {"abs_tol", q.abs_tol}, {"max_evals", q.max_evals},
            {"alpha_cutoff", q.alpha_cutoff}, {"n_max", q.n_max},     {"singularity_split", q.singularity_split}};
}

QuadratureConfig quadrature_from_json(const json& j) {
    QuadratureConfig q;
    q.rel_tol = j.value("rel_tol", q.rel_tol);
    q.abs_tol = j.value("abs_tol", q.abs_tol);
    q.max_evals = j.value("max_evals", q.max_evals);
    q.alpha_cutoff = j.value("alpha_cutoff", q.alpha_cutoff);
    q.n_max = j.value("n_max", q.n_max);
    q.singularity_split = j.value("singularity_split", q.singularity_split);
    q.validate();
    return q;
}

json to_json(const FormValue& v) { return {{"value", number(v.value)}, {"error_estimate", number(v.error_estimate)}}; }

json to_json(const BFormValue& v) { return {{"value", to_json(v.value)}, {"error_estimate", number(v.error_estimate)}}; }

json to_json(const WeylWord& w) { return {{"phase", to_json(w.phase)}, {"vector", to_json(w.vector)}}; }

json to_json(const AverageResult& r) {
    return {{"value", to_json(r.value)},
            {"error_estimate", number(r.error_estimate)},
            {"tail_bound", number(r.tail_bound)}};
}

json to_json(const ReducedSequence& s) {
    json entries = json::array();
    for (long n = -s.n_max; n <= s.n_max; ++n) entries.push_back({{"n", n}, {"A", to_json(s.at(n))}});
    return {{"n_max", s.n_max},
            {"zero_mode_defined", s.zero_mode_defined},
            {"entries", entries},
            {"tail_estimate", number(s.tail_estimate())}};
}

json to_json(const NullSpaceReport& r) {
    json eig = json::array(), leak = json::array();
    for (double v : r.gram_mu_eigvals) eig.push_back(number(v));
    for (double v : r.gram_omega_on_null) leak.push_back(number(v));
    json j = {{"gram_mu_eigvals", eig},
              {"gram_omega_on_null", leak},
              {"rank", r.rank},
              {"inclusion_holds", r.inclusion_holds},
              {"gap_ratio", number(r.gap_ratio)}};
    if (!r.warning.empty()) j["warning"] = r.warning;
    return j;
}

std::vector<FieldVector> load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("corpus " + path.string() + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("fields") || !j.at("fields").is_array())
        throw ParseError("corpus " + path.string() + ": expected {\"fields\": [...]}");
    std::vector<FieldVector> out;
    for (const auto& f : j.at("fields")) out.push_back(field_from_json(f));
    return out;
}

json corpus_to_json(const std::vector<FieldVector>& fields) {
    json arr = json::array();
    for (const auto& f : fields) arr.push_back(to_json(f));
    return {{"fields", arr}};
}

void save_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw ParseError("write failed for " + path.string());
}

}  // namespace ccr
