#include "vvef/example.hpp"

#include "vvef/eisenstein.hpp"
#include "vvef/repspec.hpp"
#include "vvef/spanengine.hpp"

#include <array>

namespace vvef {

namespace {

CycNum parse_q3(const std::string& rational_part, const std::string& zeta_part)
{
    std::vector<Rational> c{parse_rational(rational_part), parse_rational(zeta_part)};
    return CycNum(3, c).demote();
}

struct Printed {
    std::string name;
    int f;  // 0-based index into f, or -1 for newform coefficients
    long n;
    std::string a, b;  // a + b zeta_3
};

const std::vector<Printed>& printed()
{
    static const std::vector<Printed> v = {
        {"f1 q^0", 0, 0, "531440/177147", "0"},
        {"f1 q^1", 0, 1, "-1883840/19683", "0"},
        {"f1 q^2", 0, 2, "-1274566720/6561", "0"},
        {"f1 q^3", 0, 3, "-330565225280/19683", "0"},
        {"f1 q^4", 0, 4, "-7831774435520/19683", "0"},
        {"f2 q^0", 1, 0, "80/177147", "0"},
        {"f2 q^1", 1, 1, "9449920/19683", "-512000/6561"},
        {"f2 q^2", 1, 2, "774666560/6561", "87040000/2187"},
        {"f2 q^3", 1, 3, "33711845440/19683", "773632000/729"},
        {"f2 q^4", 1, 4, "122684877760/19683", "14190592000/6561"},
        {"f3 q^0", 2, 0, "6560/177147", "0"},
        {"f3 q^1", 2, 1, "4896640/19683", "-512000/6561"},
        {"f3 q^2", 2, 2, "382920320/6561", "87040000/2187"},
        {"f3 q^3", 2, 3, "13172759680/19683", "773632000/729"},
        {"f3 q^4", 2, 4, "-32958078080/19683", "14190592000/6561"},
        {"f4 q^0", 3, 0, "0", "0"},
        {"f4 q^1", 3, 1, "-512000/6561", "-1024000/6561"},
        {"f4 q^2", 3, 2, "87040000/2187", "174080000/2187"},
        {"f4 q^3", 3, 3, "773632000/729", "1547264000/729"},
        {"f4 q^4", 3, 4, "14190592000/6561", "28381184000/6561"},
        {"newform coefficient of f1", -1, 0, "-7143127641/187029630208000", "2792336247/93514815104000"},
        {"newform coefficient of f2", -1, 1, "2892599667/187029630208000", "118065190221/93514815104000"},
        {"newform coefficient of f3", -1, 2, "144661293657/46757407552000", "227653108281/93514815104000"},
        {"newform coefficient of f4", -1, 3, "-144661293657/93514815104000", "227653108281/187029630208000"},
    };
    return v;
}

CycMatrix int_matrix(const std::vector<std::vector<long>>& m)
{
    CycMatrix r(m.size(), m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j])
                r.set(i, j, CycNum(m[i][j]));
    return r;
}

}  // namespace

std::vector<CycVector> level3_fixed_vectors()
{
    // (i, j, coefficient) with 1-based e_i (x) e_j
    const std::vector<std::vector<std::array<int, 3>>> terms = {
        {{1, 1, 3}, {2, 2, -1}, {3, 3, -1}, {4, 4, -1}},
        {{1, 2, 1}, {1, 3, 1}, {1, 4, 1}, {2, 4, -1}, {3, 2, -1}, {4, 3, -1}},
        {{2, 1, 1}, {2, 4, -1}, {3, 1, 1}, {3, 2, -1}, {4, 1, 1}, {4, 3, -1}},
        {{2, 3, 1}, {2, 4, -1}, {3, 2, -1}, {3, 4, 1}, {4, 2, 1}, {4, 3, -1}},
    };
    std::vector<CycVector> out;
    for (const auto& t : terms) {
        CycVector v(16, CycNum(0));
        for (const auto& [i, j, c] : t)
            v[4 * (i - 1) + (j - 1)] = CycNum(c);
        out.push_back(v);
    }
    return out;
}

Level3Example level3_example()
{
    Level3Example ex;
    auto rhoT = hecke_rep(3, trivial_rep());
    ex.rhoT_T = rhoT->mat_T();
    ex.rhoT_S = rhoT->mat_S();
    auto tt = tensor_rep(rhoT, rhoT);
    auto fixed = t_fixed(*tt);
    ex.t_fixed_dim = fixed.size();
    ex.fvecs = level3_fixed_vectors();
    EchelonBasis eb(16);
    for (const auto& v : fixed)
        eb.insert(v);
    for (const auto& v : ex.fvecs)
        eb.insert(v);
    ex.t_fixed_rank_with_fs = eb.rank();
    EchelonBasis fb(16);
    ex.fs_fixed = true;
    for (const auto& v : ex.fvecs) {
        fb.insert(v);
        if (tt->mat_T() * v != v)
            ex.fs_fixed = false;
    }
    ex.fs_rank = fb.rank();
    auto inv = hom_space(trivial_rep(), tt);
    ex.invariant_dim = inv.dim();
    for (const auto& F : inv.basis)
        fb.insert(F.col(0));
    ex.fs_plus_invariants_rank = fb.rank();
    ex.hom_dim_rho3 = hom_space(tt, rho3_rep()).dim();

    const long prec = 5;
    auto a = vv_hecke(scalar_form(4, level1_eis(4, prec * 3)), 3, SlashNorm::plain);
    auto b = vv_hecke(scalar_form(8, level1_eis(8, prec * 3)), 3, SlashNorm::plain);
    auto p = vv_tensor(a, b);
    for (const auto& v : ex.fvecs)
        ex.f.push_back(vv_contract(p, v).truncate(Rational(prec)));

    ex.newform = QExp::from_coeffs(std::vector<long>{0, 1, 78, -243, 4036}, Rational(prec));
    auto r = express(ex.newform, 12, 3, ex.f, 4);
    if (auto* e = std::get_if<Expression>(&r)) {
        ex.newform_solved = true;
        ex.newform_coeffs = e->coeffs;
        ex.newform_kernel_dim = e->kernel_dim;
        ex.recombined = QExp(1, Rational(prec));
        for (std::size_t i = 0; i < ex.f.size(); ++i)
            ex.recombined += ex.newform_coeffs[i] * ex.f[i];
    }
    return ex;
}

std::vector<ExampleCheck> level3_example_checks(const Level3Example& ex)
{
    std::vector<ExampleCheck> out;
    auto add = [&](std::string name, const CycNum& got, const CycNum& want) {
        out.push_back({std::move(name), got == want, to_text(got), to_text(want)});
    };
    auto add_bool = [&](std::string name, bool ok, std::string got, std::string want) {
        out.push_back({std::move(name), ok, std::move(got), std::move(want)});
    };
    auto T = int_matrix({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}});
    auto S = int_matrix({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    add_bool("rho_T(T)", ex.rhoT_T == T, to_json(ex.rhoT_T).dump(), to_json(T).dump());
    add_bool("rho_T(S)", ex.rhoT_S == S, to_json(ex.rhoT_S).dump(), to_json(S).dump());
    add_bool("dim t_fixed(rho_T x rho_T)", ex.t_fixed_dim == 4, std::to_string(ex.t_fixed_dim), "4");
    add_bool("t_fixed spanned by f1..f4", ex.t_fixed_rank_with_fs == 4 && ex.t_fixed_dim == 4,
             std::to_string(ex.t_fixed_dim), "4");
    add_bool("f1..f4 independent and T-fixed", ex.fs_fixed && ex.fs_rank == 4, std::to_string(ex.fs_rank), "4");
    add_bool("t_fixed = span(f1..f4) + invariants",
             ex.fs_plus_invariants_rank == ex.t_fixed_dim && ex.t_fixed_rank_with_fs == ex.t_fixed_dim,
             std::to_string(ex.fs_plus_invariants_rank), std::to_string(ex.t_fixed_dim));
    add_bool("dim Hom(rho_T x rho_T, rho3)", ex.hom_dim_rho3 == 4, std::to_string(ex.hom_dim_rho3), "4");
    for (const auto& p : printed()) {
        CycNum want = parse_q3(p.a, p.b);
        if (p.f >= 0) {
            add(p.name, ex.f[p.f].coeff(p.n), want);
        } else if (ex.newform_solved) {
            add(p.name, ex.newform_coeffs[p.n], want);
        } else {
            add_bool(p.name, false, "no solution", to_text(want));
        }
    }
    QExp printed_comb(1, Rational(4));
    for (const auto& p : printed())
        if (p.f < 0)
            printed_comb += parse_q3(p.a, p.b) * ex.f[p.n].truncate(Rational(4));
    add_bool("printed combination reproduces q^0..q^3", printed_comb == ex.newform.truncate(Rational(4)),
             "constant term " + to_text(printed_comb.coeff(0)), "0");
    if (ex.newform_solved)
        add_bool("computed combination reproduces q^0..q^4", ex.recombined == ex.newform, "", "");
    return out;
}

}  // namespace vvef
