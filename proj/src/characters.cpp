#include "vvef/characters.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace vvef {

namespace {

std::int64_t ipow(std::int64_t b, int e)
{
    std::int64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

std::int64_t smallest_primitive_root(std::int64_t p, int e)
{
    std::int64_t q = ipow(p, e);
    std::int64_t ord = q / p * (p - 1);
    auto fac = factorize(ord);
    for (std::int64_t g = 2; g < q; ++g) {
        if (g % p == 0)
            continue;
        bool ok = true;
        for (auto [r, k] : fac) {
            Integer x;
            mpz_powm_ui(x.get_mpz_t(), Integer(g).get_mpz_t(), static_cast<unsigned long>(ord / r),
                        Integer(q).get_mpz_t());
            if (x == 1) {
                ok = false;
                break;
            }
        }
        if (ok)
            return g;
    }
    return 1;
}

// one cyclic factor of (Z/N)^x: logs[a mod N] for units a
struct CyclicFactor {
    long order;
    std::vector<long> logs;
};

std::vector<CyclicFactor> unit_group(std::int64_t N)
{
    std::vector<CyclicFactor> out;
    for (auto [p, e] : factorize(N)) {
        std::int64_t q = ipow(p, e);
        // component logs computed on residues mod q, then pulled back to mod N
        std::vector<std::vector<long>> local;  // per generator, logs mod q
        std::vector<long> orders;
        if (p == 2) {
            if (e == 1)
                continue;
            std::vector<long> l1(q, -1), l2(q, -1);
            long o2 = e >= 3 ? static_cast<long>(q / 4) : 1;
            std::int64_t x = 1;
            for (long j = 0; j < o2; ++j) {
                l1[x] = 0;
                l2[x] = j;
                l1[q - x] = 1;
                l2[q - x] = j;
                x = x * 5 % q;
            }
            local.push_back(l1);
            orders.push_back(2);
            if (e >= 3) {
                local.push_back(l2);
                orders.push_back(o2);
            }
        } else {
            std::int64_t g = smallest_primitive_root(p, e);
            long ord = static_cast<long>(q / p * (p - 1));
            std::vector<long> l(q, -1);
            std::int64_t x = 1;
            for (long j = 0; j < ord; ++j) {
                l[x] = j;
                x = x * g % q;
            }
            local.push_back(l);
            orders.push_back(ord);
        }
        for (std::size_t i = 0; i < local.size(); ++i) {
            CyclicFactor f{orders[i], std::vector<long>(N, -1)};
            for (std::int64_t a = 0; a < N; ++a)
                if (std::gcd(a, N) == 1)
                    f.logs[a] = local[i][a % q];
            out.push_back(std::move(f));
        }
    }
    return out;
}

std::int64_t mod_n(std::int64_t a, std::int64_t n)
{
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

const std::vector<DirichletChar>& cached_chars(std::int64_t N);

}  // namespace

DirichletChar::DirichletChar(std::int64_t N) : N_(N), order_(1), exps_(N, -1)
{
    if (N < 1)
        throw std::invalid_argument("character modulus must be positive");
    for (std::int64_t a = 0; a < N; ++a)
        if (std::gcd(a, N) == 1)
            exps_[a] = 0;
}

DirichletChar::DirichletChar(std::int64_t N, long order, std::vector<long> exps, std::size_t index)
    : N_(N), order_(order), exps_(std::move(exps)), index_(index)
{
    if (static_cast<std::int64_t>(exps_.size()) != N)
        throw std::invalid_argument("character table length must equal modulus");
    reduce_order();
}

void DirichletChar::reduce_order()
{
    long g = order_;
    for (long e : exps_)
        if (e >= 0)
            g = std::gcd(g, e);
    if (g <= 1)
        return;
    order_ /= g;
    for (long& e : exps_)
        if (e >= 0)
            e /= g;
}

bool DirichletChar::is_trivial() const { return order_ == 1; }

std::optional<long> DirichletChar::exponent(std::int64_t a) const
{
    long e = exps_[mod_n(a, N_)];
    if (e < 0)
        return std::nullopt;
    return e;
}

CycNum DirichletChar::operator()(std::int64_t a) const
{
    auto e = exponent(a);
    if (!e)
        return CycNum(0);
    if (*e == 0)
        return CycNum(1);
    return CycNum::zeta(order_, *e);
}

std::int64_t DirichletChar::conductor() const
{
    for (long f : divisors(N_)) {
        bool ok = true;
        for (std::int64_t a = 1; a < N_ && ok; a += f)
            if (exps_[a] > 0)
                ok = false;
        if (ok)
            return f;
    }
    return N_;
}

int DirichletChar::parity() const
{
    auto e = exponent(-1);
    if (!e || *e == 0)
        return 1;
    return 2 * *e == order_ ? -1 : 1;
}

DirichletChar DirichletChar::conj() const
{
    std::vector<long> e = exps_;
    for (long& x : e)
        if (x > 0)
            x = order_ - x;
    DirichletChar r(N_, order_, std::move(e));
    r.index_ = from_function(N_, [&](std::int64_t a) { return r.exponent(a); }, r.order_).index_;
    return r;
}

DirichletChar DirichletChar::from_function(std::int64_t N, const std::function<std::optional<long>(std::int64_t)>& e,
                                           long order)
{
    std::vector<long> ex(N, -1);
    for (std::int64_t a = 0; a < N; ++a)
        if (std::gcd(a, N) == 1) {
            auto v = e(a);
            if (!v)
                throw std::invalid_argument("character must be defined on units");
            ex[a] = mod_floor(*v, order);
        }
    DirichletChar r(N, order, std::move(ex));
    const auto& all = cached_chars(N);
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i] == r) {
            r.index_ = i;
            break;
        }
    return r;
}

DirichletChar DirichletChar::extend(std::int64_t M) const
{
    if (M % N_ != 0)
        throw std::invalid_argument("extend: new modulus must be a multiple");
    return from_function(M, [&](std::int64_t a) { return exponent(a); }, order_);
}

DirichletChar operator*(const DirichletChar& a, const DirichletChar& b)
{
    std::int64_t N = std::lcm(a.N_, b.N_);
    long L = std::lcm(a.order_, b.order_);
    return DirichletChar::from_function(
        N,
        [&](std::int64_t x) -> std::optional<long> {
            auto ea = a.exponent(x), eb = b.exponent(x);
            if (!ea || !eb)
                return std::nullopt;
            return *ea * (L / a.order_) + *eb * (L / b.order_);
        },
        L);
}

bool operator==(const DirichletChar& a, const DirichletChar& b)
{
    return a.N_ == b.N_ && a.order_ == b.order_ && a.exps_ == b.exps_;
}

DirichletChar DirichletChar::primitive() const
{
    std::int64_t f = conductor();
    return from_function(
        f,
        [&](std::int64_t a) -> std::optional<long> {
            for (std::int64_t x = a;; x += f)
                if (std::gcd(x, N_) == 1)
                    return exponent(x);
        },
        order_);
}

namespace {

std::vector<DirichletChar> build_chars(std::int64_t N)
{
    auto fac = unit_group(N);
    long L = 1;
    for (const auto& f : fac)
        L = std::lcm(L, f.order);
    long total = 1;
    for (const auto& f : fac)
        total *= f.order;
    std::vector<DirichletChar> out;
    for (long idx = 0; idx < total; ++idx) {
        // last factor varies fastest
        std::vector<long> j(fac.size(), 0);
        long r = idx;
        for (std::size_t i = fac.size(); i-- > 0;) {
            j[i] = r % fac[i].order;
            r /= fac[i].order;
        }
        std::vector<long> ex(N, -1);
        for (std::int64_t a = 0; a < N; ++a) {
            if (std::gcd(a, N) != 1)
                continue;
            long e = 0;
            for (std::size_t i = 0; i < fac.size(); ++i)
                e += j[i] * (L / fac[i].order) * fac[i].logs[a];
            ex[a] = e % L;
        }
        out.emplace_back(N, L, std::move(ex), out.size());
    }
    return out;
}

const std::vector<DirichletChar>& cached_chars(std::int64_t N)
{
    static std::map<std::int64_t, std::vector<DirichletChar>> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    if (auto it = cache.find(N); it != cache.end())
        return it->second;
    return cache.emplace(N, build_chars(N)).first->second;
}

}  // namespace

std::vector<DirichletChar> enumerate_chars(std::int64_t N)
{
    if (N < 1)
        throw std::invalid_argument("enumerate_chars requires N >= 1");
    return cached_chars(N);
}

CycNum gauss_sum(const DirichletChar& eps, std::int64_t b)
{
    std::int64_t M = eps.modulus();
    long L = std::lcm(static_cast<long>(M), eps.order());
    CycNum s(Rational(0), L);
    for (std::int64_t a = 0; a < M; ++a) {
        auto e = eps.exponent(a);
        if (!e)
            continue;
        long x = *e * (L / eps.order()) + static_cast<long>(mod_n(a * b, M)) * (L / M);
        s += CycNum::zeta(L, x);
    }
    return s;
}

CycNum sigma_w(std::int64_t n, int w, const DirichletChar& delta, const DirichletChar& eps)
{
    if (n < 1)
        throw std::invalid_argument("sigma_w requires n >= 1");
    long L = std::lcm(delta.order(), eps.order());
    std::vector<Rational> acc(L, Rational(0));
    for (long d : divisors(n)) {
        auto a = delta.exponent(d), b = eps.exponent(n / d);
        if (!a || !b)
            continue;
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(w));
        long e = (*a * (L / delta.order()) + *b * (L / eps.order())) % L;
        acc[e] += p;
    }
    CycNum s(Rational(0), L);
    for (long e = 0; e < L; ++e)
        if (sgn(acc[e]) != 0) {
            CycNum z = CycNum::zeta(L, e);
            z.scale(acc[e]);
            s += z;
        }
    return s;
}

json to_json(const DirichletChar& chi)
{
    json vals = json::array();
    for (std::int64_t a = 0; a < chi.modulus(); ++a)
        vals.push_back(to_json(chi(a)));
    return json{{"modulus", chi.modulus()}, {"index", chi.index()},     {"order", chi.order()},
                {"conductor", chi.conductor()}, {"parity", chi.parity()}, {"values", vals}};
}

}  // namespace vvef
