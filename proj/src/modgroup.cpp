#include "vvef/modgroup.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace vvef {

namespace {

std::int64_t mul_chk(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r))
        throw std::overflow_error("integer matrix entry overflow");
    return r;
}

std::int64_t add_chk(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r))
        throw std::overflow_error("integer matrix entry overflow");
    return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

std::int64_t mod_n(std::int64_t a, std::int64_t n)
{
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

std::int64_t Mat2::det() const { return add_chk(mul_chk(a, d), -mul_chk(b, c)); }

Mat2 Mat2::inverse() const
{
    if (det() != 1)
        throw std::invalid_argument("inverse requires determinant one");
    return {d, -b, -c, a};
}

Mat2 operator*(const Mat2& x, const Mat2& y)
{
    return {add_chk(mul_chk(x.a, y.a), mul_chk(x.b, y.c)), add_chk(mul_chk(x.a, y.b), mul_chk(x.b, y.d)),
            add_chk(mul_chk(x.c, y.a), mul_chk(x.d, y.c)), add_chk(mul_chk(x.c, y.b), mul_chk(x.d, y.d))};
}

std::string to_string(const Mat2& m)
{
    return "(" + std::to_string(m.a) + " " + std::to_string(m.b) + "; " + std::to_string(m.c) + " " +
           std::to_string(m.d) + ")";
}

json to_json(const Mat2& m) { return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})}); }

json to_json(const DeltaElt& m) { return to_json(m.matrix()); }

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y)
{
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        std::int64_t q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m)
{
    std::int64_t x, y;
    if (ext_gcd(mod_n(a, m), m, x, y) != 1)
        throw std::invalid_argument("not invertible modulo m");
    return mod_n(x, m);
}

std::int64_t sigma1(std::int64_t M)
{
    std::int64_t s = 0;
    for (long d : divisors(M))
        s += d;
    return s;
}

const std::vector<DeltaElt>& delta_set(std::int64_t M)
{
    if (M < 1)
        throw std::invalid_argument("delta_set requires M >= 1");
    static std::map<std::int64_t, std::vector<DeltaElt>> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto it = cache.find(M);
    if (it != cache.end())
        return it->second;
    std::vector<DeltaElt> v;
    for (long d : divisors(M))
        for (std::int64_t b = 0; b < d; ++b)
            v.push_back({M / d, b, d});
    return cache.emplace(M, std::move(v)).first->second;
}

std::size_t delta_position(const DeltaElt& m)
{
    // offset of the d-block is the sum of smaller divisors
    std::size_t pos = 0;
    for (long d : divisors(m.det())) {
        if (d == m.d)
            return pos + static_cast<std::size_t>(m.b);
        pos += static_cast<std::size_t>(d);
    }
    throw std::invalid_argument("not an element of Delta_M");
}

std::pair<Mat2, DeltaElt> hermite_reduce(const Mat2& m)
{
    std::int64_t D = m.det();
    if (D <= 0)
        throw std::invalid_argument("hermite_reduce requires positive determinant");
    std::int64_t x, y;
    std::int64_t g = ext_gcd(m.a, m.c, x, y);
    // Jinv * m = (g b'; 0 D/g)
    Mat2 Jinv{x, y, -m.c / g, m.a / g};
    std::int64_t bp = add_chk(mul_chk(x, m.b), mul_chk(y, m.d));
    std::int64_t dd = D / g;
    std::int64_t t = floor_div(bp, dd);
    Jinv = Mat2{1, -t, 0, 1} * Jinv;
    DeltaElt r{g, bp - t * dd, dd};
    return {Jinv.inverse(), r};
}

HeckeReduction hecke_reduce(const DeltaElt& m, const Mat2& gamma)
{
    if (gamma.det() != 1)
        throw std::invalid_argument("hecke_reduce requires determinant one");
    auto [J, mb] = hermite_reduce(m.matrix() * gamma);
    return {J, mb};
}

DeltaElt adjoint_matrix(const DeltaElt& m) { return {m.d, mod_n(-m.b, m.a), m.a}; }

STWord st_word(const Mat2& gamma)
{
    if (gamma.det() != 1)
        throw std::invalid_argument("st_word requires determinant one");
    Mat2 g = gamma;
    STWord w;
    while (g.c != 0) {
        std::int64_t q = floor_div(g.a, g.c);
        if (q != 0) {
            w.push_back({Gen::T, q});
            g = Mat2{1, -q, 0, 1} * g;
        }
        w.push_back({Gen::S, 1});
        g = Mat2{g.c, g.d, -g.a, -g.b};
    }
    if (g.a == 1) {
        if (g.b != 0)
            w.push_back({Gen::T, g.b});
    } else {
        w.push_back({Gen::S, 1});
        w.push_back({Gen::S, 1});
        if (g.b != 0)
            w.push_back({Gen::T, -g.b});
    }
    return w;
}

Mat2 eval_word(const STWord& w)
{
    Mat2 r = Mat2::identity();
    for (const auto& l : w)
        r = r * (l.g == Gen::S ? Mat2::S() : Mat2{1, l.e, 0, 1});
    return r;
}

std::int64_t gamma0_index(std::int64_t N)
{
    std::int64_t r = N;
    for (auto [p, e] : factorize(N))
        r = r / p * (p + 1);
    return r;
}

bool in_gamma0(const Mat2& g, std::int64_t N) { return g.det() == 1 && mod_n(g.c, N) == 0; }

CosetTable::CosetTable(std::int64_t N) : N_(N), lookup_(static_cast<std::size_t>(N * N), -1)
{
    if (N < 1)
        throw std::invalid_argument("coset table requires N >= 1");
    std::vector<std::int64_t> units;
    for (std::int64_t u = 0; u < N; ++u)
        if (std::gcd(u, N) == 1)
            units.push_back(u);
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::pair<std::int64_t, std::int64_t>>> cls;
    for (std::int64_t c = 0; c < N; ++c)
        for (std::int64_t d = 0; d < N; ++d) {
            if (std::gcd(std::gcd(c, d), N) != 1)
                continue;
            std::pair<std::int64_t, std::int64_t> best{N, N};
            for (auto u : units)
                best = std::min(best, {u * c % N, u * d % N});
            cls[best].push_back({c, d});
        }
    for (const auto& [key, members] : cls) {
        auto idx = static_cast<std::int32_t>(reps_.size());
        for (auto [c, d] : members)
            lookup_[static_cast<std::size_t>(c * N + d)] = idx;
        // smallest nonnegative lift with coprime entries
        std::int64_t cl = 0, dl = 0;
        bool found = false;
        for (std::int64_t s = 0; !found; ++s)
            for (std::int64_t i = 0; i <= s && !found; ++i) {
                cl = key.first + i * N;
                dl = key.second + (s - i) * N;
                found = std::gcd(cl, dl) == 1;
            }
        std::int64_t x, y;
        ext_gcd(dl, cl, x, y);
        // x*dl + y*cl = 1, so (x, -y; cl, dl) has determinant one
        std::int64_t a = x, b = -y;
        if (dl != 0) {
            std::int64_t k = floor_div(b, dl);
            a -= k * cl;
            b -= k * dl;
        } else {
            std::int64_t k = floor_div(a, cl);
            a -= k * cl;
            b -= k * dl;
        }
        reps_.push_back({a, b, cl, dl});
        classes_.push_back(key);
    }
}

std::size_t CosetTable::index_of(std::int64_t c, std::int64_t d) const
{
    auto i = lookup_[static_cast<std::size_t>(mod_n(c, N_) * N_ + mod_n(d, N_))];
    if (i < 0)
        throw std::invalid_argument("bottom row is not primitive modulo N");
    return static_cast<std::size_t>(i);
}

CosetReduction CosetTable::reduce(const Mat2& gamma) const
{
    if (gamma.det() != 1)
        throw std::invalid_argument("coset_reduce requires determinant one");
    std::size_t i = index_of(gamma.c, gamma.d);
    Mat2 iota = gamma * reps_[i].inverse();
    if (mod_n(iota.c, N_) != 0)
        throw std::logic_error("coset reduction failed");
    return {i, iota};
}

std::shared_ptr<const CosetTable> p1_cosets(std::int64_t N)
{
    static std::map<std::int64_t, std::shared_ptr<const CosetTable>> cache;
    static std::mutex mu;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(N); it != cache.end())
            return it->second;
    }
    auto t = std::make_shared<const CosetTable>(N);
    std::lock_guard lock(mu);
    return cache.emplace(N, t).first->second;
}

CosetReduction coset_reduce(const Mat2& gamma, std::int64_t N) { return p1_cosets(N)->reduce(gamma); }

Mat2 lift_sl2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t N)
{
    a = mod_n(a, N);
    b = mod_n(b, N);
    c = mod_n(c, N);
    d = mod_n(d, N);
    if (mod_n(a * d - b * c, N) != mod_n(1, N))
        throw std::invalid_argument("lift_sl2: determinant is not 1 modulo N");
    std::int64_t cl = c, dl = d;
    bool found = false;
    for (std::int64_t s = 0; !found; ++s)
        for (std::int64_t i = 0; i <= s && !found; ++i) {
            cl = c + i * N;
            dl = d + (s - i) * N;
            found = std::gcd(cl, dl) == 1;
        }
    std::int64_t x, y;
    ext_gcd(dl, cl, x, y);
    std::int64_t a0 = x, b0 = -y;
    std::int64_t k = mod_n(mod_n(a0, N) * mod_n(b - b0, N) - mod_n(b0, N) * mod_n(a - a0, N), N);
    Mat2 r{a0 + k * cl, b0 + k * dl, cl, dl};
    if (r.det() != 1 || mod_n(r.a - a, N) != 0 || mod_n(r.b - b, N) != 0)
        throw std::logic_error("lift_sl2 failed");
    return r;
}

Mat2 gamma_MN(std::int64_t M, std::int64_t N)
{
    if (M < 1 || N % M != 0)
        throw std::invalid_argument("gamma_MN requires M | N");
    std::int64_t K = N / M;
    if (std::gcd(M, K) != 1)
        throw std::invalid_argument("gamma_MN requires gcd(M, N/M) = 1");
    // x = u mod M, x = v mod K
    auto crt = [&](std::int64_t u, std::int64_t v) {
        if (K == 1)
            return mod_n(u, M);
        if (M == 1)
            return mod_n(v, K);
        std::int64_t inv = mod_inverse(M, K);
        std::int64_t t = mod_n((v - u) % K * inv, K);
        return mod_n(u + M * t, N);
    };
    return lift_sl2(crt(0, 1), crt(-1, 0), crt(1, 0), crt(0, 1), N);
}

std::vector<DeltaOrbit> orbit_decomposition(std::int64_t M)
{
    const auto& delta = delta_set(M);
    std::vector<DeltaOrbit> out;
    for (long a : divisors(M)) {
        if ((M / a) % a != 0)
            continue;
        DeltaOrbit o;
        o.a = a;
        for (std::size_t i = 0; i < delta.size(); ++i) {
            const auto& m = delta[i];
            if (std::gcd(std::gcd(m.a, m.b), m.d) == a)
                o.members.push_back(i);
        }
        DeltaElt m0{M / a, 0, a};
        auto table = p1_cosets(M / (a * a));
        for (const auto& r : table->reps())
            o.witness.push_back(delta_position(hecke_reduce(m0, r).m_bar));
        out.push_back(std::move(o));
    }
    return out;
}

}  // namespace vvef
