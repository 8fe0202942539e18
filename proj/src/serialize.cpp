#include <blochkit/serialize.hpp>

#include <algorithm>
#include <fstream>

#include <blochkit/expr.hpp>

namespace blochkit
{

namespace
{

[[noreturn]] void bad_spec(const std::string &what)
{
    throw Error("invalid algebra spec: " + what);
}

Json row_json(const DegreeRow &r)
{
    return Json{{"degree", r.degree},
                {"dim_rel", r.dim_rel},
                {"dim_ker", r.dim_ker},
                {"dim_im", r.dim_im},
                {"dim_h", r.dim_h}};
}

} // namespace

AlgebraSpec algebra_spec_from_json(const Json &j)
{
    if (!j.is_object()) {
        bad_spec("expected an object");
    }
    for (const auto &[key, value] : j.items()) {
        if (key != "nilpotents" && key != "bound" && key != "ideal" && key != "params" && key != "monomial_ideal") {
            bad_spec("unknown field " + key);
        }
    }
    if (!j.contains("nilpotents") || !j["nilpotents"].is_number_integer()) {
        bad_spec("nilpotents must be an integer");
    }
    if (!j.contains("bound") || !j["bound"].is_number_integer()) {
        bad_spec("bound must be an integer");
    }
    std::vector<ParamSpec> params;
    if (j.contains("params")) {
        if (!j["params"].is_array()) {
            bad_spec("params must be an array");
        }
        for (const auto &p : j["params"]) {
            if (p.is_string()) {
                params.push_back({p.get<std::string>(), false});
                continue;
            }
            if (!p.is_object() || !p.contains("name") || !p["name"].is_string()) {
                bad_spec("each param needs a name");
            }
            params.push_back({p["name"].get<std::string>(), p.value("invertible", false)});
        }
    }
    const int m = j["nilpotents"].get<int>();
    const int N = j["bound"].get<int>();
    if (m < 1 || m > 8) {
        bad_spec("nilpotents must be between 1 and 8");
    }
    if (N < 1) {
        bad_spec("bound must be positive");
    }
    if (!j.contains("ideal")) {
        AlgebraSpec spec = AlgebraSpec::finite_free(m, N, params);
        if (j.contains("monomial_ideal") && !j["monomial_ideal"].get<bool>()) {
            spec.monomial_ideal = false;
        }
        return spec;
    }
    AlgebraSpec spec;
    spec.nilpotents = m;
    spec.bound = N;
    spec.params = params;
    const VarLayout vars = spec.layout();
    if (!j["ideal"].is_array()) {
        bad_spec("ideal must be an array of strings");
    }
    bool monomial = true;
    for (const auto &g : j["ideal"]) {
        if (!g.is_string()) {
            bad_spec("ideal must be an array of strings");
        }
        Poly p = parse_poly(g.get<std::string>(), vars);
        monomial = monomial && p.size() == 1;
        spec.ideal.push_back(std::move(p));
    }
    // J is read as (listed generators) + (t1..tm)^N.
    for (const auto &e : exponent_vectors(m, N)) {
        Poly mono = Poly::monomial(Monomial(e, std::vector<int>(params.size(), 0)));
        if (std::find(spec.ideal.begin(), spec.ideal.end(), mono) == spec.ideal.end()) {
            spec.ideal.push_back(std::move(mono));
        }
    }
    spec.monomial_ideal = j.contains("monomial_ideal") ? j["monomial_ideal"].get<bool>() : monomial;
    return spec;
}

AlgebraSpec load_algebra_spec(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path);
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        bad_spec(std::string("malformed JSON (") + e.what() + ")");
    }
    return algebra_spec_from_json(j);
}

Json to_json(const AlgebraSpec &spec)
{
    const VarLayout vars = spec.layout();
    Json ideal = Json::array();
    for (const auto &g : spec.ideal) {
        ideal.push_back(g.to_string(vars));
    }
    Json params = Json::array();
    for (const auto &p : spec.params) {
        params.push_back({{"name", p.name}, {"invertible", p.invertible}});
    }
    return Json{{"nilpotents", spec.nilpotents},
                {"bound", spec.bound},
                {"ideal", ideal},
                {"monomial_ideal", spec.monomial_ideal},
                {"params", params}};
}

Json to_json(const RelativeSpec &rel, const VarLayout &vars)
{
    return rel.describe(vars);
}

Json to_json(const CohomologyReport &r)
{
    Json rows = Json::array();
    for (const auto &row : r.rows) {
        rows.push_back(row_json(row));
    }
    Json out{{"algebra", r.algebra}, {"relative", r.relative}, {"rows", rows}, {"all_zero", r.all_zero()}};
    if (r.parametric) {
        out["window"] = {{"lo", r.window.lo}, {"hi", r.window.hi}};
        Json blocks = Json::array();
        for (const auto &b : r.blocks) {
            Json row = row_json(b.row);
            row["block"] = b.block;
            blocks.push_back(row);
        }
        out["blocks"] = blocks;
    }
    return out;
}

std::string terms_to_string(const Form::Terms &t, const AlgebraPtr &alg, int degree)
{
    return Form::from_canonical(alg, degree, t).to_string();
}

Json to_json(const ExactnessCertificate &c)
{
    Json out{{"exact", c.exact}, {"target", c.target.to_string()}};
    if (c.cutoff) {
        out["cutoff"] = *c.cutoff;
    }
    if (c.exact) {
        out["primitive"] = c.primitive.to_string();
    } else {
        out["witness"] = terms_to_string(c.witness, c.target.algebra(), c.target.degree());
    }
    return out;
}

Json to_json(const Verdict &v)
{
    return Json{{"holds", v.holds}, {"statement", v.detail}, {"certificate", to_json(v.certificate)}};
}

Json to_json(const SequenceReport &r)
{
    Json levels = Json::array();
    for (const auto &l : r.levels) {
        levels.push_back({{"degree", l.k}, {"dim_J", l.J}, {"dim_I", l.I}, {"dim_quotient", l.quotient}});
    }
    return Json{{"degree", r.degree},
                {"quotient", r.quotient},
                {"h_prev", r.h_prev},
                {"h_prev_quotient", r.h_prev_quotient},
                {"q_J", r.q_J},
                {"q_I", r.q_I},
                {"q_quotient", r.q_quotient},
                {"rank_beta", r.rank_beta},
                {"rank_alpha", r.rank_alpha},
                {"rank_incl", r.rank_incl},
                {"rank_proj", r.rank_proj},
                {"alpha_injective", r.alpha_injective},
                {"levels", levels},
                {"failures", r.failures},
                {"exact", r.ok()}};
}

Json to_json(const SigmaReport &r)
{
    Json levels = Json::array();
    for (const auto &l : r.levels) {
        levels.push_back({{"degree", l.n},
                          {"source_dim", l.source_dim},
                          {"target_dim", l.target_dim},
                          {"rank", l.rank},
                          {"bijective", l.bijective}});
    }
    return Json{{"N", r.N}, {"levels", levels}, {"bijective", r.ok()}};
}

Json to_json(const SurjectivityReport &r)
{
    return Json{{"degree", r.degree},
                {"symbols", r.symbols},
                {"quotient_dim", r.quotient_dim},
                {"rank", r.rank},
                {"spans", r.spans()}};
}

Json to_json(const SingularityReport &r)
{
    const VarLayout vars(r.m, {}, {});
    return Json{{"f", r.f.to_string(vars)},
                {"m", r.m},
                {"mu", r.mu},
                {"tau", r.tau},
                {"h_dim", r.h_dim},
                {"N_used", r.N_used},
                {"stabilization_degree", r.stabilization_degree},
                {"tau_N_used", r.tau_N_used},
                {"tau_stabilization_degree", r.tau_stabilization_degree}};
}

Json to_json(const BlochClass &c)
{
    return Json{{"class", c.representative.to_string()},
                {"zero", c.is_zero()},
                {"raw", c.raw.to_string()},
                {"base_part", c.base_part.to_string()}};
}

} // namespace blochkit
