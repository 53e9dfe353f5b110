#include "vvef/spanengine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace vvef {

namespace {

void require_product_weights(int k, int l)
{
    if (l < 4 || k - l < 4 || l % 2 != 0 || k % 2 != 0)
        throw std::invalid_argument("weights must satisfy l, k - l >= 4 even");
}

// Kronecker symbol (D/p) for D in {-1, -3}
int kron_small(int D, std::int64_t p)
{
    if (D == -1) {
        if (p == 2)
            return 0;
        return p % 4 == 1 ? 1 : -1;
    }
    if (p == 3)
        return 0;
    return p % 3 == 1 ? 1 : -1;
}

std::vector<CycNum> integral_coeffs(const QExp& f, long prec)
{
    std::vector<CycNum> v(prec, CycNum(0));
    for (const auto& [num, c] : f.terms()) {
        if (num % f.denom() != 0)
            throw std::logic_error("classical component has non-integral exponents");
        std::int64_t n = num / f.denom();
        if (n < prec)
            v[n] = c;
    }
    return v;
}

long common_level(const std::vector<CycNum>& row)
{
    long L = 1;
    for (const auto& c : row)
        if (!c.is_zero())
            L = std::lcm(L, c.demote().level());
    return L;
}

struct PairWork {
    std::int64_t N, Nprime;
    std::size_t hom_dim = 0;
    std::vector<std::vector<CycNum>> rows;
    std::vector<QExp> forms;
};

}  // namespace

GammaZeroInvariants gamma0_invariants(std::int64_t N)
{
    if (N < 1)
        throw std::invalid_argument("level must be positive");
    GammaZeroInvariants g{gamma0_index(N), 1, 1, cusp_count(N), 0};
    for (auto [p, e] : factorize(N)) {
        g.nu2 *= (e >= 2 && p == 2) ? 0 : 1 + kron_small(-1, p);
        g.nu3 *= (e >= 2 && p == 3) ? 0 : 1 + kron_small(-3, p);
    }
    if (N % 4 == 0)
        g.nu2 = 0;
    if (N % 9 == 0)
        g.nu3 = 0;
    // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 c
    g.genus = (12 + g.index - 3 * g.nu2 - 4 * g.nu3 - 6 * g.cusps) / 12;
    return g;
}

std::int64_t cusp_count(std::int64_t N)
{
    std::int64_t c = 0;
    for (long d : divisors(N))
        c += euler_phi(std::gcd<std::int64_t>(d, N / d));
    return c;
}

std::int64_t sturm_bound(int k, std::int64_t N)
{
    std::int64_t num = static_cast<std::int64_t>(k) * gamma0_index(N);
    return (num + 11) / 12 + 1;
}

std::int64_t dim_Mk(int k, std::int64_t N)
{
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("weight must be even and >= 4");
    auto g = gamma0_invariants(N);
    return (k - 1) * (g.genus - 1) + (k / 4) * g.nu2 + (k / 3) * g.nu3 + (k / 2) * g.cusps;
}

std::int64_t dim_Sk(int k, std::int64_t N) { return dim_Mk(k, N) - cusp_count(N); }

VVForm hecke_eis_product(int k, int l, std::int64_t N, std::int64_t Nprime, long prec, SlashNorm norm)
{
    require_product_weights(k, l);
    auto a = vv_hecke(scalar_form(l, level1_eis(l, prec * N)), N, norm);
    auto b = vv_hecke(scalar_form(k - l, level1_eis(k - l, prec * Nprime)), Nprime, norm);
    return vv_tensor(a, b);
}

std::vector<VVForm> product_space(int k, int l, std::int64_t N, std::int64_t Nprime, const HomBasis& hom, long prec,
                                  SlashNorm norm)
{
    auto p = hecke_eis_product(k, l, N, Nprime, prec, norm);
    std::vector<VVForm> out;
    for (const auto& phi : hom.basis)
        out.push_back(vv_apply(phi, p, hom.target));
    return out;
}

std::vector<VVForm> product_space(int k, int l, std::int64_t N, std::int64_t Nprime, const RepPtr& target, long prec,
                                  SlashNorm norm)
{
    require_product_weights(k, l);
    auto src = tensor_rep(hecke_rep(N, trivial_rep()), hecke_rep(Nprime, trivial_rep()));
    return product_space(k, l, N, Nprime, hom_space(src, target), prec, norm);
}

std::vector<QExp> product_components(int k, int l, std::int64_t N, std::int64_t Nprime, const HomBasis& hom,
                                     std::size_t row, long prec, SlashNorm norm)
{
    require_product_weights(k, l);
    auto a = vv_hecke(scalar_form(l, level1_eis(l, prec * N)), N, norm);
    auto b = vv_hecke(scalar_form(k - l, level1_eis(k - l, prec * Nprime)), Nprime, norm);
    std::size_t nb = b.comps.size();
    std::map<std::size_t, QExp> products;
    std::vector<QExp> out;
    for (const auto& phi : hom.basis) {
        QExp acc;
        bool first = true;
        for (std::size_t x = 0; x < phi.cols(); ++x) {
            if (phi(row, x).is_zero())
                continue;
            auto it = products.find(x);
            if (it == products.end())
                it = products.emplace(x, (a.comps[x / nb] * b.comps[x % nb]).truncate(Rational(prec))).first;
            QExp term = phi(row, x) * it->second;
            if (first) {
                acc = term;
                first = false;
            } else {
                acc += term;
            }
        }
        if (first)
            acc = QExp(1, Rational(prec));
        out.push_back(acc);
    }
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> pair_order(std::int64_t nmax)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> v;
    for (std::int64_t n = 1; n <= nmax; ++n)
        for (std::int64_t m = 1; m <= nmax; ++m)
            v.emplace_back(n, m);
    std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        std::int64_t px = x.first * x.second, py = y.first * y.second;
        return px != py ? px < py : x.first < y.first;
    });
    return v;
}

SpanReport span_check(int k, int l, std::int64_t level, std::int64_t nmax, long prec, const SpanOptions& opt)
{
    if (k < 8)
        throw std::invalid_argument("span_check requires k >= 8");
    require_product_weights(k, l);
    if (level < 1 || nmax < 0)
        throw std::invalid_argument("level must be positive and nmax nonnegative");
    SpanReport r;
    r.k = k;
    r.l = l;
    r.level = level;
    r.nmax = nmax;
    r.prec = prec;
    r.sturm = sturm_bound(k, level);
    if (prec < r.sturm)
        throw std::invalid_argument("prec must be at least the Sturm bound " + std::to_string(r.sturm));
    r.dim_mk = dim_Mk(k, level);
    r.dim_sk = dim_Sk(k, level);

    auto target = induced_gamma0(level, DirichletChar(level));
    auto eis = eis_basis_gamma0(level, k, prec);
    r.eis_count = eis.size();
    r.t_fixed_dim = t_fixed(*target).size();
    if (r.eis_count != r.t_fixed_dim)
        throw std::logic_error("Eisenstein basis size differs from the T-fixed dimension");

    EchelonBasis augmented(prec), products(prec);
    for (const auto& e : eis)
        if (augmented.insert(integral_coeffs(e, prec)) && opt.generators)
            opt.generators->push_back(e);

    HomProvider hom = opt.hom ? opt.hom : HomProvider(hom_space);
    auto work = [&](std::int64_t N, std::int64_t Np) {
        PairWork w{N, Np, 0, {}, {}};
        auto src = tensor_rep(hecke_rep(N, trivial_rep()), hecke_rep(Np, trivial_rep()));
        auto hb = hom(src, target);
        w.hom_dim = hb.dim();
        if (w.hom_dim == 0)
            return w;
        for (auto& c : product_components(k, l, N, Np, hb, 0, prec)) {
            w.rows.push_back(integral_coeffs(c, prec));
            w.forms.push_back(std::move(c));
        }
        return w;
    };

    auto order = pair_order(nmax);
    std::size_t batch = std::max(1, opt.parallel);
    bool done = opt.early_stop && static_cast<std::int64_t>(augmented.rank()) == r.dim_mk;
    for (std::size_t start = 0; start < order.size() && !done; start += batch) {
        std::size_t end = std::min(order.size(), start + batch);
        std::vector<PairWork> results(end - start);
        if (batch == 1) {
            results[0] = work(order[start].first, order[start].second);
        } else {
            std::vector<std::thread> threads;
            std::vector<std::exception_ptr> errors(end - start);
            for (std::size_t i = start; i < end; ++i)
                threads.emplace_back([&, i] {
                    try {
                        results[i - start] = work(order[i].first, order[i].second);
                    } catch (...) {
                        errors[i - start] = std::current_exception();
                    }
                });
            for (auto& t : threads)
                t.join();
            for (auto& e : errors)
                if (e)
                    std::rethrow_exception(e);
        }
        for (auto& w : results) {
            if (w.hom_dim == 0)
                continue;
            for (std::size_t i = 0; i < w.rows.size(); ++i) {
                products.insert(w.rows[i]);
                if (augmented.insert(w.rows[i]) && opt.generators)
                    opt.generators->push_back(w.forms[i]);
            }
            r.pairs.push_back({w.N, w.Nprime, w.hom_dim, augmented.rank(), products.rank()});
            if (opt.early_stop && static_cast<std::int64_t>(augmented.rank()) == r.dim_mk) {
                done = true;
                break;
            }
        }
    }
    r.product_rank = products.rank();
    r.augmented_rank = augmented.rank();
    if (static_cast<std::int64_t>(r.augmented_rank) > r.dim_mk)
        throw std::logic_error("rank exceeds dim M_k");
    r.spanned = static_cast<std::int64_t>(r.augmented_rank) == r.dim_mk;
    return r;
}

json to_json(const SpanReport& r)
{
    json pairs = json::array();
    for (const auto& p : r.pairs)
        pairs.push_back({{"N", p.N},
                         {"Nprime", p.Nprime},
                         {"hom_dim", p.hom_dim},
                         {"rank_after", p.rank_after},
                         {"product_rank_after", p.product_rank_after}});
    return json{{"k", r.k},
                {"l", r.l},
                {"level", r.level},
                {"nmax", r.nmax},
                {"prec", r.prec},
                {"sturm_bound", r.sturm},
                {"dim_Mk", r.dim_mk},
                {"dim_Sk", r.dim_sk},
                {"eisenstein_count", r.eis_count},
                {"t_fixed_dim", r.t_fixed_dim},
                {"pairs", pairs},
                {"product_rank", r.product_rank},
                {"augmented_rank", r.augmented_rank},
                {"verdict", r.verdict()}};
}

std::variant<Expression, NoSolution> express(const QExp& target, int k, std::int64_t N, const std::vector<QExp>& basis,
                                             long prec)
{
    if (basis.empty())
        throw std::invalid_argument("express needs a nonempty basis");
    if (prec < static_cast<long>(basis.size()))
        throw std::invalid_argument("prec must be at least the number of basis elements");
    std::vector<std::vector<CycNum>> cols;
    for (const auto& b : basis)
        cols.push_back(integral_coeffs(b.truncate(Rational(prec)), prec));
    auto rhs_v = integral_coeffs(target.truncate(Rational(prec)), prec);
    for (const auto& b : basis)
        if (b.prec() < prec)
            throw std::invalid_argument("basis precision below requested prec");
    if (target.prec() < prec)
        throw std::invalid_argument("target precision below requested prec");
    long L = common_level(rhs_v);
    for (const auto& c : cols)
        L = std::lcm(L, common_level(c));
    CycMatrix m(prec, basis.size());
    CycVector rhs(prec);
    for (long i = 0; i < prec; ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (!cols[j][i].is_zero())
                m.set(i, j, cols[j][i].embed(L));
        rhs[i] = rhs_v[i].embed(L);
    }
    auto s = solve(m, rhs);
    if (std::holds_alternative<NoSolution>(s))
        return NoSolution{};
    auto& sol = std::get<Solution>(s);
    Expression e;
    for (auto& c : sol.x)
        e.coeffs.push_back(c.demote());
    e.kernel_dim = sol.kernel_dim;
    e.certified = prec >= sturm_bound(k, N) && sol.kernel_dim == 0;
    return e;
}

std::size_t cusp_coset(std::int64_t N, std::int64_t a, std::int64_t c)
{
    std::int64_t x, y;
    std::int64_t g = ext_gcd(a, c, y, x);  // a y + c x = g
    if (g < 0) {
        g = -g;
        x = -x;
        y = -y;
    }
    if (g != 1)
        throw std::invalid_argument("cusp a/c needs gcd(a, c) = 1");
    Mat2 gamma{a, -x, c, y};
    return coset_reduce(gamma, N).rep_index;
}

QExp cusp_expansion(const VVForm& f, std::size_t coset_index)
{
    if (f.rep->kind() != RepKind::Induced || (f.rep->character() && !f.rep->character()->is_trivial()))
        throw std::invalid_argument("cusp expansion needs a form of type Ind_{Gamma0(N)} 1");
    if (coset_index >= f.comps.size())
        throw std::invalid_argument("coset index out of range");
    return f.comps[coset_index];
}

QExp cusp_expansion(const VVForm& f, std::int64_t a, std::int64_t c)
{
    if (f.rep->kind() != RepKind::Induced)
        throw std::invalid_argument("cusp expansion needs a form of type Ind_{Gamma0(N)} 1");
    return cusp_expansion(f, cusp_coset(f.rep->param(), a, c));
}

}  // namespace vvef
