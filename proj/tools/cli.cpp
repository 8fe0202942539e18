#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include <blochkit/expr.hpp>
#include <blochkit/parallel.hpp>
#include <blochkit/serialize.hpp>

#include "../tests/acceptance/criteria.hpp"

namespace blochkit::cli
{

namespace
{

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlgebraOptions {
    std::string file;
    std::optional<int> N;
    std::optional<int> m;
    std::vector<std::string> params;
    std::vector<std::string> invertible;
    std::vector<std::string> ideal;

    void attach(CLI::App *app)
    {
        app->add_option("--algebra", file, "algebra spec (JSON)");
        app->add_option("--N", N, "nilpotency bound (overrides the file)");
        app->add_option("--m", m, "number of nilpotent variables (overrides the file)");
        app->add_option("--param", params, "parameter name (repeatable)");
        app->add_option("--invertible", invertible, "invertible parameter name (repeatable)");
        app->add_option("--ideal", ideal, "extra ideal generator (repeatable)");
    }

    bool given() const
    {
        return !file.empty() || N.has_value();
    }

    AlgebraSpec spec() const
    {
        if (!given()) {
            throw UsageError("an algebra is required (--algebra or --N)");
        }
        Json j = Json::object();
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) {
                throw UsageError("cannot open " + file);
            }
            try {
                j = Json::parse(in);
            } catch (const nlohmann::json::parse_error &e) {
                throw Error(std::string("invalid algebra spec: malformed JSON (") + e.what() + ")");
            }
        }
        if (m) {
            j["nilpotents"] = *m;
        } else if (!j.contains("nilpotents")) {
            j["nilpotents"] = 1;
        }
        if (N) {
            j["bound"] = *N;
        }
        for (const auto &p : params) {
            j["params"].push_back({{"name", p}, {"invertible", false}});
        }
        for (const auto &p : invertible) {
            j["params"].push_back({{"name", p}, {"invertible", true}});
        }
        for (const auto &g : ideal) {
            j["ideal"].push_back(g);
        }
        return algebra_spec_from_json(j);
    }
};

RelativeSpec parse_relative(const std::string &text, const AlgebraPtr &alg)
{
    if (text == "full") {
        return RelativeSpec::full();
    }
    if (text.rfind("power:", 0) == 0) {
        try {
            return RelativeSpec::power_of(std::stoi(text.substr(6)));
        } catch (const std::logic_error &) {
            throw UsageError("bad relative ideal " + text);
        }
    }
    if (text.rfind("ideal:", 0) == 0) {
        std::vector<Poly> gens;
        std::string rest = text.substr(6);
        std::size_t start = 0;
        while (start <= rest.size()) {
            const std::size_t comma = rest.find(',', start);
            const std::string g = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            gens.push_back(parse_poly(g, alg->vars()));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        return RelativeSpec::explicit_ideal(std::move(gens));
    }
    throw UsageError("relative ideal must be full, power:K or ideal:g1,g2,...");
}

ParamWindow window_for(const AlgebraPtr &alg, int param_degree)
{
    if (param_degree < 0) {
        throw UsageError("--param-degree must be non-negative");
    }
    return ParamWindow::box(alg, alg->parametric() ? param_degree : 0);
}

// Result of one subcommand: JSON payload, overall verdict, summary line.
struct Outcome {
    Json result;
    bool ok = true;
    std::string summary;
};

Json string_list(const std::vector<std::string> &v)
{
    Json out = Json::array();
    for (const auto &s : v) {
        out.push_back(s);
    }
    return out;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Relative de Rham cohomology and Bloch map calculator for truncated polynomial algebras", "blochkit"};
    app.require_subcommand(1);
    app.fallthrough();
    bool no_timing = false;
    bool summary = false;
    app.add_flag("--no-timing", no_timing, "omit the timing field");
    app.add_flag("--summary", summary, "print a one-line summary to stderr");

    AlgebraOptions alg_opts;
    std::function<Outcome()> action;
    std::optional<Json> algebra_echo;
    auto load = [&]() {
        const AlgebraSpec spec = alg_opts.spec();
        algebra_echo = to_json(spec);
        return Algebra::build(spec);
    };

    // cohom
    auto *cohom = app.add_subcommand("cohom", "relative de Rham cohomology table");
    alg_opts.attach(cohom);
    std::string rel_text = "full";
    int param_degree = 1;
    int n_max = -1;
    bool expect_zero = false;
    cohom->add_option("--rel", rel_text, "full | power:K | ideal:g1,g2,...");
    cohom->add_option("--param-degree", param_degree, "parameter exponent window");
    cohom->add_option("--nmax", n_max, "highest form degree");
    cohom->add_flag("--expect-zero", expect_zero, "fail unless every H^n vanishes");
    cohom->callback([&] {
        action = [&] {
            const auto alg = load();
            const RelativeSpec rel = parse_relative(rel_text, alg);
            const CohomologyReport r = cohomology(alg, rel, n_max, window_for(alg, param_degree));
            Outcome o{to_json(r), !expect_zero || r.all_zero(), ""};
            o.summary = std::string("H ") + (r.all_zero() ? "all zero" : "nonzero");
            return o;
        };
    });

    // bloch
    auto *bl = app.add_subcommand("bloch", "Bloch class of a symbol");
    alg_opts.attach(bl);
    std::string symbol_text;
    std::string slot = "first";
    std::optional<int> cutoff;
    bl->add_option("--symbol", symbol_text, "k*{u1, ..., un} + ...")->required();
    bl->add_option("--slot", slot, "first | last")->check(CLI::IsMember({"first", "last"}));
    bl->add_option("--cutoff", cutoff, "drop internal degrees above this");
    bl->callback([&] {
        action = [&] {
            const auto alg = load();
            const SymbolSum s = parse_symbol(symbol_text, alg);
            const BlochClass c = bloch(s, slot == "first" ? SlotRule::First : SlotRule::Last, cutoff);
            Json res{{"symbol", s.to_string()}};
            const Json cls = to_json(c);
            for (const auto &[k, v] : cls.items()) {
                res[k] = v;
            }
            if (!c.is_zero()) {
                const ExactnessCertificate cert = is_exact(c.raw, RelativeSpec::full(), cutoff);
                res["witness"] = terms_to_string(cert.witness, alg, c.raw.degree());
            }
            return Outcome{res, true, c.is_zero() ? "class zero" : "class " + c.representative.to_string()};
        };
    });

    // verify-homotopy
    auto *hom = app.add_subcommand("verify-homotopy", "(dh+hd) = i on basis forms");
    alg_opts.attach(hom);
    int hom_nmax = 2;
    hom->add_option("--nmax", hom_nmax, "highest form degree");
    hom->add_option("--param-degree", param_degree, "parameter exponent window");
    hom->callback([&] {
        action = [&] {
            const auto alg = load();
            const HomotopyReport r = verify_homotopy(alg, hom_nmax, window_for(alg, param_degree));
            Json res{{"checked", r.checked}, {"failures", string_list(r.failures)}, {"holds", r.ok()}};
            return Outcome{res, r.ok(), std::to_string(r.checked) + " forms checked"};
        };
    });

    // verify-steinberg
    auto *st = app.add_subcommand("verify-steinberg", "B(zeta(a, x)) = 0");
    alg_opts.attach(st);
    std::string a_text;
    std::string x_text;
    int random_count = 0;
    unsigned seed = 1;
    st->add_option("--a", a_text, "constant a with a, 1-a units");
    st->add_option("--x", x_text, "nilpotent x");
    st->add_option("--random", random_count, "check this many random instances instead");
    st->add_option("--seed", seed, "seed for --random");
    st->callback([&] {
        action = [&] {
            if (random_count > 0) {
                const auto instances = acceptance::steinberg_instances(random_count, seed);
                std::vector<Verdict> verdicts(instances.size());
                parallel_for(instances.size(),
                             [&](std::size_t i) { verdicts[i] = verify_steinberg(instances[i].a, instances[i].x); });
                Json list = Json::array();
                std::size_t holds = 0;
                for (const auto &v : verdicts) {
                    list.push_back(to_json(v));
                    holds += v.holds ? 1 : 0;
                }
                Json res{{"instances", instances.size()}, {"holds", holds}, {"verdicts", list}};
                return Outcome{res, holds == instances.size(),
                               std::to_string(holds) + "/" + std::to_string(instances.size()) + " vanish"};
            }
            if (a_text.empty() || x_text.empty()) {
                throw UsageError("verify-steinberg needs --a and --x, or --random");
            }
            const auto alg = load();
            const Verdict v = verify_steinberg(parse_elem(a_text, alg), parse_elem(x_text, alg));
            return Outcome{to_json(v), v.holds, v.holds ? "vanishes" : "does not vanish"};
        };
    });

    // verify-key-identity
    auto *key = app.add_subcommand("verify-key-identity", "(i+j) B{1+at^i, 1+bt^j} = t^(i+j)(i a db - j b da)");
    int ki = 0;
    int kj = 0;
    key->add_option("--i", ki)->required();
    key->add_option("--j", kj)->required();
    key->callback([&] {
        action = [&] {
            const Verdict v = verify_key_identity(ki, kj);
            return Outcome{to_json(v), v.holds, v.holds ? "holds, primitive " + v.certificate.primitive.to_string()
                                                        : "fails"};
        };
    });

    // verify-filtration
    auto *fil = app.add_subcommand("verify-filtration", "B{1+at^i, 1+bt^j} in Q[a,b][t]/t^p");
    int fp = 0;
    int fi = 0;
    int fj = 0;
    fil->add_option("--p", fp)->required();
    fil->add_option("--i", fi)->required();
    fil->add_option("--j", fj)->required();
    fil->callback([&] {
        action = [&] {
            if (fi + fj >= fp) {
                const Verdict v = verify_filtration_vanishing(fp, fi, fj);
                return Outcome{to_json(v), v.holds, v.holds ? "class zero" : "class nonzero"};
            }
            const ExactnessCertificate c = filtration_class(fp, fi, fj);
            const bool nonzero = !c.exact && verify_certificate(c, RelativeSpec::full());
            Json res{{"expected", "nonzero"}, {"holds", nonzero}, {"certificate", to_json(c)}};
            return Outcome{res, nonzero, nonzero ? "certified nonzero" : "class zero"};
        };
    });

    // verify-sigma
    auto *sig = app.add_subcommand("verify-sigma", "sigma: Omega(R_2,(t)) -> Omega(R_N,(t^(N-1)))");
    int sN = 0;
    std::vector<std::string> sparams;
    sig->add_option("--N", sN)->required()->check(CLI::PositiveNumber);
    sig->add_option("--param", sparams, "base parameter (repeatable)");
    sig->add_option("--param-degree", param_degree, "parameter exponent window");
    sig->callback([&] {
        action = [&] {
            if (sN < 2) {
                throw UsageError("--N must be at least 2");
            }
            std::vector<ParamSpec> ps;
            for (const auto &p : sparams) {
                ps.push_back({p, false});
            }
            const SigmaReport r = verify_sigma(sN, ps, param_degree);
            return Outcome{to_json(r), r.ok(), r.ok() ? "bijective" : "not bijective"};
        };
    });

    // verify-sequence
    auto *seq = app.add_subcommand("verify-sequence", "exactness of the relative forms sequence for J in I");
    alg_opts.attach(seq);
    std::string j_text;
    std::string i_text = "full";
    std::optional<int> seq_degree;
    seq->add_option("--J", j_text, "full | power:K | ideal:g1,...")->required();
    seq->add_option("--I", i_text, "full | power:K | ideal:g1,...");
    seq->add_option("--degree", seq_degree, "form degree (default: all)");
    seq->callback([&] {
        action = [&] {
            const auto alg = load();
            const RelativeSpec J = parse_relative(j_text, alg);
            const RelativeSpec I = parse_relative(i_text, alg);
            std::vector<int> degrees;
            if (seq_degree) {
                degrees.push_back(*seq_degree);
            } else {
                for (int n = 0; n <= alg->nilpotents() + 1; ++n) {
                    degrees.push_back(n);
                }
            }
            Json list = Json::array();
            bool ok = true;
            for (int n : degrees) {
                const SequenceReport r = verify_forms_sequence(alg, J, I, n);
                list.push_back(to_json(r));
                ok = ok && r.ok();
            }
            return Outcome{Json{{"degrees", list}, {"exact", ok}}, ok, ok ? "exact" : "not exact"};
        };
    });

    // singular
    auto *sing = app.add_subcommand("singular", "Milnor and Tyurina numbers with the de Rham cross-check");
    std::string poly_text;
    int sing_nmax = default_singularity_bound;
    sing->add_option("--poly", poly_text, "polynomial in t or t1..tm")->required();
    sing->add_option("--nmax", sing_nmax, "largest truncation tried");
    sing->callback([&] {
        action = [&] {
            const VarLayout vars = infer_nilpotent_layout(poly_text);
            const SingularityReport r = singularity_report(parse_poly(poly_text, vars), sing_nmax);
            return Outcome{to_json(r), true,
                           "mu=" + std::to_string(r.mu) + " tau=" + std::to_string(r.tau) +
                               " h_dim=" + std::to_string(r.h_dim)};
        };
    });

    // selftest
    auto *self = app.add_subcommand("selftest", "run the acceptance suite");
    std::vector<int> only;
    self->add_option("--only", only, "criterion ids");
    self->callback([&] {
        action = [&] {
            Json list = Json::array();
            bool ok = true;
            std::size_t passed = 0;
            const auto results = acceptance::run_criteria(only);
            for (const auto &r : results) {
                list.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
                ok = ok && r.pass;
                passed += r.pass ? 1 : 0;
            }
            return Outcome{Json{{"criteria", list}, {"pass", ok}}, ok,
                           std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria pass"};
        };
    });

    std::vector<const char *> argv{"blochkit"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = action();
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Json report;
    report["command"] = string_list(args);
    if (algebra_echo) {
        report["algebra"] = *algebra_echo;
    }
    report["result"] = o.result;
    report["ok"] = o.ok;
    if (!no_timing) {
        report["timing_seconds"] = seconds;
    }
    out << report.dump(2) << "\n";
    if (summary) {
        err << app.get_subcommands().front()->get_name() << ": " << o.summary << (o.ok ? "" : " (FAILED)") << "\n";
    }
    return o.ok ? 0 : 1;
}

} // namespace blochkit::cli
