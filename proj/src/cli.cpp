#include "vvef/cli.hpp"

#include "vvef/eisenstein.hpp"
#include "vvef/example.hpp"
#include "vvef/repspec.hpp"
#include "vvef/spanengine.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace vvef {

namespace fs = std::filesystem;

namespace {

std::string env_or(const char* name, const std::string& dflt)
{
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : dflt;
}

std::string exponent_text(const Rational& e)
{
    if (e == 1)
        return "q";
    if (e.get_den() == 1)
        return "q^" + e.get_str();
    return "q^(" + e.get_str() + ")";
}

std::string qexp_text(const QExp& f)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [num, c] : f.terms()) {
        Rational e = make_rational(num, f.denom());
        if (!first)
            os << " + ";
        first = false;
        if (e == 0)
            os << to_text(c);
        else if (c.is_one())
            os << exponent_text(e);
        else
            os << to_text(c) << "*" << exponent_text(e);
    }
    if (first)
        os << "0";
    os << " + O(" << exponent_text(f.prec()) << ")";
    return os.str();
}

std::string mat_text(const CycMatrix& m)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << to_text(m(i, j));
        os << "]\n";
    }
    return os.str();
}

std::string sanitize(const std::string& s)
{
    std::string r;
    for (char c : s)
        r += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return r;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read file " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
}

void write_atomic(const fs::path& p, const std::string& text)
{
    fs::create_directories(p.parent_path());
    fs::path tmp = p;
    tmp += ".tmp" + std::to_string(std::hash<std::string>{}(text) % 1000003);
    {
        std::ofstream out(tmp);
        out << text;
    }
    fs::rename(tmp, p);
}

HomProvider cached_hom(const std::string& dir)
{
    if (dir.empty())
        return HomProvider(hom_space);
    return [dir](const RepPtr& src, const RepPtr& tgt) {
        fs::path p = fs::path(dir) / "hom" / (sanitize(src->spec() + "__" + tgt->spec()) + ".json");
        if (fs::exists(p)) {
            json j = read_json_file(p.string());
            if (j.at("source") == src->spec() && j.at("target") == tgt->spec()) {
                HomBasis hb{src, tgt, {}};
                for (const auto& m : j.at("basis"))
                    hb.basis.push_back(matrix_from_json(m));
                return hb;
            }
        }
        HomBasis hb = hom_space(src, tgt);
        json basis = json::array();
        for (const auto& m : hb.basis)
            basis.push_back(to_json(m));
        write_atomic(p, json{{"source", src->spec()}, {"target", tgt->spec()}, {"basis", basis}}.dump());
        return hb;
    };
}

json cosets_json(std::int64_t N)
{
    auto t = p1_cosets(N);
    json reps = json::array();
    for (const auto& m : t->reps())
        reps.push_back(to_json(m));
    return reps;
}

VVForm vvform_from_json(const json& j)
{
    auto rep = parse_rep(j.at("rep").get<std::string>());
    std::vector<QExp> comps;
    for (const auto& c : j.at("comps"))
        comps.push_back(qexp_from_json(c));
    return make_vvform(j.at("weight").get<int>(), rep, std::move(comps));
}

// {"k", "l", "level", "prec", "terms": [{"N", "Nprime", "phi", "coeff"}]}
VVForm product_expression(const json& j, const HomProvider& hom)
{
    int k = j.at("k").get<int>(), l = j.at("l").get<int>();
    std::int64_t level = j.at("level").get<std::int64_t>();
    long prec = j.at("prec").get<long>();
    auto target = induced_gamma0(level, DirichletChar(level));
    std::vector<VVForm> forms;
    CycVector coeffs;
    for (const auto& t : j.at("terms")) {
        std::int64_t N = t.at("N").get<std::int64_t>(), Np = t.at("Nprime").get<std::int64_t>();
        std::size_t phi = t.at("phi").get<std::size_t>();
        auto src = tensor_rep(hecke_rep(N, trivial_rep()), hecke_rep(Np, trivial_rep()));
        auto hb = hom(src, target);
        if (phi >= hb.dim())
            throw std::invalid_argument("phi index exceeds the Hom-space dimension");
        HomBasis one{hb.source, hb.target, {hb.basis[phi]}};
        forms.push_back(product_space(k, l, N, Np, one, prec).front());
        coeffs.push_back(cyc_from_json(t.at("coeff")));
    }
    if (forms.empty())
        throw std::invalid_argument("expression has no terms");
    // bring all terms to one precision before combining
    Rational p = forms.front().prec();
    for (const auto& f : forms)
        if (f.prec() < p)
            p = f.prec();
    for (auto& f : forms)
        f = make_vvform(f.weight, f.rep, [&] {
            std::vector<QExp> c;
            for (const auto& q : f.comps)
                c.push_back(q.truncate(p));
            return c;
        }());
    return vv_combine(forms, coeffs);
}

std::pair<std::int64_t, std::int64_t> parse_cusp(const std::string& s)
{
    if (s == "inf" || s == "oo" || s == "infinity")
        return {1, 0};
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return {std::stoll(s), 1};
        return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("cusp must be a/c or inf");
    }
}

struct Output {
    const Config& cfg;
    std::ostream& out;
    std::string path;

    void emit(const json& j, const std::function<void(std::ostream&)>& plain) const
    {
        std::ostringstream os;
        if (cfg.format == OutputFormat::json)
            os << j.dump(2) << "\n";
        else
            plain(os);
        if (path.empty()) {
            out << os.str();
        } else {
            std::ofstream f(path);
            if (!f)
                throw std::invalid_argument("cannot write " + path);
            f << os.str();
        }
    }
};

}  // namespace

Config config_from_env()
{
    Config c;
    try {
        c.prec = std::stol(env_or("VVEF_PREC", std::to_string(c.prec)));
        c.nmax = std::stoll(env_or("VVEF_NMAX", std::to_string(c.nmax)));
        c.parallel = std::stoi(env_or("VVEF_PARALLEL", std::to_string(c.parallel)));
    } catch (const std::exception&) {
        throw std::invalid_argument("VVEF_PREC, VVEF_NMAX and VVEF_PARALLEL must be integers");
    }
    std::string f = env_or("VVEF_FORMAT", "plain");
    if (f == "json")
        c.format = OutputFormat::json;
    else if (f == "plain")
        c.format = OutputFormat::plain;
    else
        throw std::invalid_argument("VVEF_FORMAT must be json or plain");
    c.cache_dir = env_or("VVEF_CACHE_DIR", "");
    return c;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Config cfg;
    try {
        cfg = config_from_env();
    } catch (const std::invalid_argument& e) {
        err << "precondition violated: " << e.what() << "\n";
        return exit_precondition;
    }

    CLI::App app{"Exact vector-valued Hecke operators and Eisenstein products"};
    app.name("vvef");
    app.require_subcommand(1);
    app.fallthrough();
    bool json_flag = false;
    std::string out_path;
    auto* prec_opt = app.add_option("--prec", cfg.prec, "precision: exponents < prec are exact");
    app.add_option("--nmax", cfg.nmax, "largest N, N' for product pairs");
    app.add_option("--parallel", cfg.parallel, "worker threads");
    app.add_flag("--json", json_flag, "JSON output");
    app.add_option("--out", out_path, "write output to FILE");

    std::int64_t level = 1, m = 1, mod = 1, n = 1, nprime = 1, t = 1, nmax_rankin = 50;
    int k = 12, l = 4, w = 3;
    std::string spec, delta_s, eps_s, target_file, basis_file, expr_file, cusp_s, target_spec;
    bool exhaustive = false;

    auto* c_cosets = app.add_subcommand("cosets", "coset representatives of Gamma0(N) in SL2(Z)");
    c_cosets->add_option("--level", level)->required();
    auto* c_delta = app.add_subcommand("delta", "the set Delta_M of upper triangular matrices");
    c_delta->add_option("--m", m)->required();
    auto* c_chars = app.add_subcommand("chars", "Dirichlet characters mod N");
    c_chars->add_option("--mod", mod)->required();
    auto* c_rep = app.add_subcommand("rep-info", "dimension, matrices and T-fixed dimension of a representation");
    c_rep->add_option("--spec", spec)->required();
    auto* c_eis = app.add_subcommand("eis", "q-expansion of an Eisenstein series");
    c_eis->add_option("--k", k)->required();
    c_eis->add_option("--delta", delta_s, "MOD:IDX");
    c_eis->add_option("--eps", eps_s, "MOD:IDX");
    c_eis->add_option("--t", t);
    auto* c_product = app.add_subcommand("product", "phi(T_N E_l (x) T_N' E_{k-l}) for a basis of Hom");
    c_product->add_option("--k", k)->required();
    c_product->add_option("--l", l)->required();
    c_product->add_option("--n", n)->required();
    c_product->add_option("--nprime", nprime)->required();
    c_product->add_option("--target", target_spec, "rep spec")->required();
    auto* c_span = app.add_subcommand("span-check", "rank of products and Eisenstein series against dim M_k");
    c_span->add_option("--k", k)->required();
    c_span->add_option("--l", l)->required();
    c_span->add_option("--level", level)->required();
    c_span->add_flag("--exhaustive", exhaustive, "process every pair instead of stopping once spanned");
    auto* c_express = app.add_subcommand("express", "express a q-expansion in a basis");
    c_express->add_option("--k", k)->required();
    c_express->add_option("--level", level)->required();
    c_express->add_option("--l", l, "weight of the first Eisenstein factor for the default basis");
    c_express->add_option("--target-file", target_file)->required();
    c_express->add_option("--basis-file", basis_file, "JSON array of q-expansions");
    auto* c_cusp = app.add_subcommand("cusp", "component expansion at a cusp");
    c_cusp->add_option("--level", level)->required();
    c_cusp->add_option("--cusp", cusp_s, "a/c or inf")->required();
    c_cusp->add_option("--expr-file", expr_file)->required();
    auto* c_example = app.add_subcommand("example-12-3", "weight 12 level 3 reproduction");
    auto* c_rankin = app.add_subcommand("rankin-check", "Rankin coefficient identity for tau");
    c_rankin->add_option("--w", w)->required();
    c_rankin->add_option("--n", nmax_rankin, "check n = 1..N");
    c_rankin->add_option("--delta", delta_s, "MOD:IDX");
    c_rankin->add_option("--eps", eps_s, "MOD:IDX");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "vvef: " << e.what() << "\n" << app.help();
        return exit_usage;
    }

    if (json_flag)
        cfg.format = OutputFormat::json;
    Output o{cfg, out, out_path};

    try {
        if (cfg.prec < 1)
            throw std::invalid_argument("--prec must be at least 1");
        if (cfg.parallel < 1)
            throw std::invalid_argument("--parallel must be at least 1");
        if (cfg.nmax < 0)
            throw std::invalid_argument("--nmax must be nonnegative");

        if (*c_cosets) {
            if (level < 1)
                throw std::invalid_argument("--level must be positive");
            json j;
            fs::path cp;
            if (!cfg.cache_dir.empty()) {
                cp = fs::path(cfg.cache_dir) / "cosets" / ("level_" + std::to_string(level) + ".json");
                if (fs::exists(cp))
                    j = read_json_file(cp.string());
            }
            if (j.is_null()) {
                j = cosets_json(level);
                if (!cp.empty())
                    write_atomic(cp, j.dump());
            }
            o.emit(j, [&](std::ostream& os) {
                auto tb = p1_cosets(level);
                for (std::size_t i = 0; i < tb->size(); ++i)
                    os << i << ": " << to_string(tb->rep(i)) << "  (" << tb->classes()[i].first << " : "
                       << tb->classes()[i].second << ")\n";
            });
        } else if (*c_delta) {
            if (m < 1)
                throw std::invalid_argument("--m must be positive");
            json j = json::array();
            for (const auto& d : delta_set(m))
                j.push_back(to_json(d));
            o.emit(j, [&](std::ostream& os) {
                for (const auto& d : delta_set(m))
                    os << "(" << d.a << " " << d.b << "; 0 " << d.d << ")\n";
            });
        } else if (*c_chars) {
            if (mod < 1)
                throw std::invalid_argument("--mod must be positive");
            auto chars = enumerate_chars(mod);
            json j = json::array();
            for (const auto& c : chars)
                j.push_back(to_json(c));
            o.emit(j, [&](std::ostream& os) {
                for (const auto& c : chars) {
                    os << mod << ":" << c.index() << " conductor " << c.conductor() << " parity " << c.parity()
                       << " order " << c.order() << " values";
                    for (std::int64_t a = 0; a < mod; ++a)
                        os << " " << to_text(c(a));
                    os << "\n";
                }
            });
        } else if (*c_rep) {
            auto rho = parse_rep(spec);
            json j = rep_info_json(*rho);
            o.emit(j, [&](std::ostream& os) {
                os << "spec " << rho->spec() << "\ndim " << rho->dim() << "\nlevel " << rho->level()
                   << "\nt_fixed_dim " << j.at("t_fixed_dim") << "\nS =\n"
                   << mat_text(rho->mat_S()) << "T =\n"
                   << mat_text(rho->mat_T());
            });
        } else if (*c_eis) {
            QExp f;
            if (delta_s.empty() && eps_s.empty() && t == 1) {
                f = level1_eis(k, cfg.prec);
            } else {
                DirichletChar d = delta_s.empty() ? DirichletChar(1) : parse_char(delta_s);
                DirichletChar e = eps_s.empty() ? DirichletChar(1) : parse_char(eps_s);
                f = char_eis(EisSpec{k, d, e, t}, cfg.prec);
            }
            o.emit(to_json(f), [&](std::ostream& os) { os << qexp_text(f) << "\n"; });
        } else if (*c_product) {
            auto target = parse_rep(target_spec);
            auto src = tensor_rep(hecke_rep(n, trivial_rep()), hecke_rep(nprime, trivial_rep()));
            auto hb = cached_hom(cfg.cache_dir)(src, target);
            auto forms = product_space(k, l, n, nprime, hb, cfg.prec);
            json j = json::array();
            for (const auto& f : forms) {
                if (!check_t_compat(f))
                    throw std::logic_error("product form fails T-compatibility");
                j.push_back(to_json(f));
            }
            o.emit(j, [&](std::ostream& os) {
                os << "Hom dimension " << forms.size() << "\n";
                for (std::size_t i = 0; i < forms.size(); ++i) {
                    os << "phi " << i << "\n";
                    for (std::size_t c = 0; c < forms[i].comps.size(); ++c)
                        os << "  [" << c << "] " << qexp_text(forms[i].comps[c]) << "\n";
                }
            });
        } else if (*c_span) {
            long prec = prec_opt->count() ? cfg.prec : static_cast<long>(sturm_bound(k, level));
            SpanOptions opt;
            opt.parallel = cfg.parallel;
            opt.early_stop = !exhaustive;
            opt.hom = cached_hom(cfg.cache_dir);
            auto r = span_check(k, l, level, cfg.nmax, prec, opt);
            o.emit(to_json(r), [&](std::ostream& os) {
                os << "k " << r.k << " l " << r.l << " level " << r.level << " nmax " << r.nmax << " prec " << r.prec
                   << "\n";
                for (const auto& p : r.pairs)
                    os << "  pair (" << p.N << ", " << p.Nprime << ") hom " << p.hom_dim << " rank " << p.rank_after
                       << " product rank " << p.product_rank_after << "\n";
                os << "eisenstein " << r.eis_count << " product rank " << r.product_rank << " rank "
                   << r.augmented_rank << " dim M_k " << r.dim_mk << "\nverdict " << r.verdict() << "\n";
            });
        } else if (*c_express) {
            QExp target = qexp_from_json(read_json_file(target_file));
            std::vector<QExp> basis;
            long prec = prec_opt->count() ? cfg.prec : static_cast<long>(sturm_bound(k, level));
            if (!basis_file.empty()) {
                for (const auto& b : read_json_file(basis_file))
                    basis.push_back(qexp_from_json(b));
            } else {
                SpanOptions opt;
                opt.parallel = cfg.parallel;
                opt.hom = cached_hom(cfg.cache_dir);
                opt.generators = &basis;
                span_check(k, l, level, cfg.nmax, std::max(prec, static_cast<long>(sturm_bound(k, level))), opt);
            }
            auto r = express(target, k, level, basis, prec);
            if (std::holds_alternative<NoSolution>(r)) {
                o.emit(json{{"status", "no solution"}}, [](std::ostream& os) { os << "no solution\n"; });
                return exit_failure;
            }
            const auto& e = std::get<Expression>(r);
            json coeffs = json::array();
            for (const auto& c : e.coeffs)
                coeffs.push_back(to_json(c));
            json basis_j = json::array();
            for (const auto& b : basis)
                basis_j.push_back(to_json(b));
            json j{{"status", "solved"},
                   {"coefficients", coeffs},
                   {"kernel_dim", e.kernel_dim},
                   {"certified", e.certified},
                   {"basis", basis_j}};
            o.emit(j, [&](std::ostream& os) {
                for (std::size_t i = 0; i < e.coeffs.size(); ++i)
                    os << "c" << i << " = " << to_text(e.coeffs[i]) << "\n";
                os << "kernel_dim " << e.kernel_dim << "\n" << (e.certified ? "certified" : "heuristic") << "\n";
            });
        } else if (*c_cusp) {
            json ej = read_json_file(expr_file);
            HomProvider hom = cached_hom(cfg.cache_dir);
            VVForm f = ej.contains("comps") ? vvform_from_json(ej) : product_expression(ej, hom);
            if (f.rep->kind() != RepKind::Induced || f.rep->param() != level)
                throw std::invalid_argument("expression must be of type Ind_{Gamma0(" + std::to_string(level) +
                                            ")} 1");
            auto [a, c] = parse_cusp(cusp_s);
            std::size_t idx = cusp_coset(level, a, c);
            QExp g = cusp_expansion(f, idx);
            json j{{"cusp", cusp_s}, {"coset_index", idx}, {"expansion", to_json(g)}};
            o.emit(j, [&](std::ostream& os) { os << "coset " << idx << "\n" << qexp_text(g) << "\n"; });
        } else if (*c_example) {
            auto checks = level3_example_checks(level3_example());
            bool all = true;
            json j = json::array();
            for (const auto& c : checks) {
                all = all && c.pass;
                j.push_back({{"name", c.name}, {"pass", c.pass}, {"got", c.got}, {"expected", c.expected}});
            }
            o.emit(j, [&](std::ostream& os) {
                for (const auto& c : checks) {
                    os << (c.pass ? "PASS " : "FAIL ") << c.name;
                    if (!c.pass)
                        os << "  got " << c.got << " expected " << c.expected;
                    os << "\n";
                }
            });
            return all ? exit_ok : exit_failure;
        } else if (*c_rankin) {
            if (nmax_rankin < 1)
                throw std::invalid_argument("--n must be positive");
            QExp delta_q = ramanujan_delta(nmax_rankin + 1);
            CoeffOracle tau = [&](std::int64_t x) { return delta_q.coeff(x); };
            DirichletChar d = delta_s.empty() ? DirichletChar(1) : parse_char(delta_s);
            DirichletChar e = eps_s.empty() ? DirichletChar(1) : parse_char(eps_s);
            bool all = true;
            json j = json::array();
            std::ostringstream plain;
            for (std::int64_t x = 1; x <= nmax_rankin; ++x) {
                auto s = rankin_sides(tau, 12, DirichletChar(1), w, d, e, x);
                bool ok = s.lhs == s.rhs;
                all = all && ok;
                j.push_back({{"n", x}, {"lhs", to_json(s.lhs)}, {"rhs", to_json(s.rhs)}, {"pass", ok}});
                plain << (ok ? "PASS" : "FAIL") << " n=" << x << " " << to_text(s.lhs) << " " << to_text(s.rhs) << "\n";
            }
            o.emit(j, [&](std::ostream& os) { os << plain.str(); });
            return all ? exit_ok : exit_failure;
        }
    } catch (const std::invalid_argument& e) {
        err << "precondition violated: " << e.what() << "\n";
        return exit_precondition;
    } catch (const std::out_of_range& e) {
        err << "precondition violated: " << e.what() << "\n";
        return exit_precondition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_ok;
}

}  // namespace vvef
