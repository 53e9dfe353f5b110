#include "vvef/canonical_maps.hpp"

#include <numeric>
#include <stdexcept>

namespace vvef {

namespace {

Rational rpow(std::int64_t base, int e)
{
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

void require_even(int k)
{
    if (k % 2 != 0)
        throw std::invalid_argument("weight k must be even");
}

// [e_x, n] in T_M Ind_{Gamma0(N)} chi, with e_x = conj(chi(iota)) e_beta for x = iota beta
struct IndTarget {
    std::int64_t N;
    DirichletChar chi;
    std::shared_ptr<const CosetTable> table;

    void add(CycVector& col, const Mat2& x, const Mat2& n, const CycNum& coeff) const
    {
        auto [J, nbar] = hermite_reduce(n);
        auto red = table->reduce(x * J);
        std::size_t idx = delta_position(nbar) * table->size() + red.rep_index;
        col[idx] += coeff * chi(red.iota.a);
    }
};

CanonicalMap finish(MapKind kind, RepPtr source, RepPtr target, const std::vector<CycVector>& cols)
{
    std::size_t r = target->dim(), c = source->dim();
    CycMatrix F(r, c);
    for (std::size_t j = 0; j < c; ++j)
        for (std::size_t i = 0; i < r; ++i)
            if (!cols[j][i].is_zero())
                F.set(i, j, cols[j][i]);
    CanonicalMap m{kind, std::move(source), std::move(target), F, F.conj_transpose(), std::nullopt};
    CycMatrix P = m.projection * m.inclusion;
    CycNum s = P(0, 0);
    bool scalar = true;
    for (std::size_t i = 0; i < P.rows() && scalar; ++i)
        for (std::size_t j = 0; j < P.cols() && scalar; ++j)
            if (P(i, j) != (i == j ? s : CycNum(0)))
                scalar = false;
    if (scalar)
        m.scalar = s;
    return m;
}

std::vector<CycVector> zero_cols(std::size_t c, std::size_t r) { return std::vector<CycVector>(c, CycVector(r)); }

}  // namespace

DirichletChar al_character(std::int64_t M, const DirichletChar& chi)
{
    std::int64_t N = chi.modulus();
    if (N % M != 0 || std::gcd(M, N / M) != 1)
        throw std::invalid_argument("al requires M | N and gcd(M, N/M) = 1");
    std::int64_t K = N / M;
    // idempotents: e1 = 1 mod M, 0 mod K; e2 = 0 mod M, 1 mod K
    std::int64_t e1 = 0, e2 = 0;
    for (std::int64_t x = 0; x < N; ++x) {
        if (x % M == 1 % M && x % K == 0)
            e1 = x;
        if (x % M == 0 && x % K == 1 % K)
            e2 = x;
    }
    return DirichletChar::from_function(
        N,
        [&](std::int64_t a) -> std::optional<long> {
            std::int64_t a1 = (a * e1 + e2) % N;  // a mod M, 1 mod K
            std::int64_t a2 = (e1 + a * e2) % N;  // 1 mod M, a mod K
            auto x = chi.exponent(a1), y = chi.exponent(a2);
            return -*x + *y;
        },
        chi.order());
}

CanonicalMap unit_map(std::int64_t M)
{
    auto src = trivial_rep();
    auto tgt = hecke_rep(M, src);
    std::vector<CycVector> cols{CycVector(tgt->dim(), CycNum(1))};
    return finish(MapKind::unit, src, tgt, cols);
}

CanonicalMap hecke_map(std::int64_t M, const DirichletChar& chi, int k)
{
    require_even(k);
    std::int64_t N = chi.modulus();
    if (std::gcd(M, N) != 1)
        throw std::invalid_argument("hecke map requires gcd(M, N) = 1");
    auto src = induced_gamma0(N, chi);
    auto tgt = hecke_rep(M, src);
    IndTarget t{N, chi, p1_cosets(N)};
    CycNum c(rpow(M, k / 2 - 1));
    auto cols = zero_cols(src->dim(), tgt->dim());
    for (std::size_t b = 0; b < src->dim(); ++b)
        for (const auto& m : delta_set(M))
            t.add(cols[b], Mat2::identity(), m.matrix() * t.table->rep(b), c * chi(m.d));
    return finish(MapKind::hecke, src, tgt, cols);
}

CanonicalMap al_map(std::int64_t M, const DirichletChar& chi)
{
    std::int64_t N = chi.modulus();
    auto chi2 = al_character(M, chi);
    auto src = induced_gamma0(N, chi2);
    auto tgt = hecke_rep(M, induced_gamma0(N, chi));
    IndTarget t{N, chi, p1_cosets(N)};
    Mat2 g = gamma_MN(M, N);
    auto cols = zero_cols(src->dim(), tgt->dim());
    for (std::size_t b = 0; b < src->dim(); ++b)
        t.add(cols[b], g, Mat2::diag(M, 1) * t.table->rep(b), CycNum(1));
    return finish(MapKind::al, src, tgt, cols);
}

CanonicalMap old_map(std::int64_t M, const DirichletChar& chi, int k)
{
    require_even(k);
    std::int64_t N = chi.modulus();
    auto src = induced_gamma0(M * N, chi.extend(M * N));
    auto tgt = hecke_rep(M, induced_gamma0(N, chi));
    IndTarget t{N, chi, p1_cosets(N)};
    auto src_table = p1_cosets(M * N);
    CycNum c(rpow(M, -k / 2));
    auto cols = zero_cols(src->dim(), tgt->dim());
    for (std::size_t b = 0; b < src->dim(); ++b)
        t.add(cols[b], Mat2::identity(), Mat2::diag(M, 1) * src_table->rep(b), c);
    return finish(MapKind::old, src, tgt, cols);
}

CanonicalMap twist_map(const DirichletChar& eps, const DirichletChar& chi, int k)
{
    require_even(k);
    std::int64_t M = eps.modulus(), N = chi.modulus();
    std::int64_t NM2 = N * M * M;
    auto chi2 = chi.extend(NM2) * (eps * eps).extend(NM2);
    auto src = induced_gamma0(NM2, chi2);
    auto tgt = hecke_rep(M * M, induced_gamma0(N, chi));
    IndTarget t{N, chi, p1_cosets(N)};
    auto src_table = p1_cosets(NM2);
    std::vector<CycNum> coef;
    for (std::int64_t b = 0; b < M; ++b)
        coef.push_back(gauss_sum(eps, -b) * CycNum(make_rational(1, M)));
    auto cols = zero_cols(src->dim(), tgt->dim());
    for (std::size_t j = 0; j < src->dim(); ++j)
        for (std::int64_t b = 0; b < M; ++b)
            if (!coef[b].is_zero())
                t.add(cols[j], Mat2::identity(), Mat2{M, b, 0, M} * src_table->rep(j), coef[b]);
    return finish(MapKind::twist, src, tgt, cols);
}

CanonicalMap id_map(std::int64_t M, const DirichletChar& chi)
{
    std::int64_t N = chi.modulus();
    auto src = induced_gamma0(N, chi);
    auto tgt = hecke_rep(M * M, src);
    IndTarget t{N, chi, p1_cosets(N)};
    auto cols = zero_cols(src->dim(), tgt->dim());
    for (std::size_t b = 0; b < src->dim(); ++b)
        t.add(cols[b], t.table->rep(b), Mat2::diag(M, M), CycNum(1));
    return finish(MapKind::id, src, tgt, cols);
}

CanonicalMap diag_map(const DirichletChar& chi)
{
    std::int64_t N = chi.modulus();
    auto src = induced_gamma0(N, DirichletChar(N));
    auto tgt = tensor_rep(induced_gamma0(N, chi), induced_gamma0(N, chi.conj()));
    std::size_t n = src->dim();
    auto cols = zero_cols(n, tgt->dim());
    for (std::size_t b = 0; b < n; ++b)
        cols[b][b * n + b] = CycNum(1);
    return finish(MapKind::diag, src, tgt, cols);
}

CanonicalMap adj_map(std::int64_t M, const RepPtr& rho)
{
    auto tgt = hecke_rep(M, hecke_rep(M, rho));
    const auto& delta = delta_set(M);
    std::size_t k = rho->dim(), nd = delta.size();
    auto cols = zero_cols(k, tgt->dim());
    for (std::size_t p = 0; p < nd; ++p) {
        const auto& q = delta[p];
        // q^# = J * qbar
        auto [J, qbar] = hermite_reduce(q.matrix().adjugate());
        CycMatrix R = rho->evaluate(J.inverse());
        std::size_t inner = delta_position(qbar);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < k; ++i)
                if (!R(i, j).is_zero())
                    cols[j][(p * nd + inner) * k + i] += R(i, j);
    }
    return finish(MapKind::adj, rho, tgt, cols);
}

}  // namespace vvef
