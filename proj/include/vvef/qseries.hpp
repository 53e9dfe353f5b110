#pragma once

#include "vvef/linalg.hpp"
#include "vvef/modgroup.hpp"
#include "vvef/representations.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace vvef {

// Truncated q-expansion. Exponents are num/denom; coefficients known for exponents < prec.
class QExp {
public:
    QExp() = default;
    QExp(std::int64_t denom, Rational prec);

    static QExp from_coeffs(const std::vector<CycNum>& c, const Rational& prec);
    static QExp from_coeffs(const std::vector<long>& c, const Rational& prec);

    std::int64_t denom() const { return w_; }
    const Rational& prec() const { return prec_; }
    // keyed by numerator over denom()
    const std::map<std::int64_t, CycNum>& terms() const { return c_; }

    CycNum coeff(const Rational& n) const;
    CycNum coeff(long n) const { return coeff(Rational(n)); }
    void add_term(const Rational& n, const CycNum& v);

    bool integral_exponents() const { return w_ == 1; }
    bool is_zero() const { return c_.empty(); }
    std::vector<Rational> exponents() const;

    QExp truncate(const Rational& p) const;
    QExp with_denom(std::int64_t w) const;
    // substitute q -> q^t
    QExp dilate(std::int64_t t) const;

    QExp& operator+=(const QExp& o);
    QExp& operator-=(const QExp& o);
    friend QExp operator+(QExp a, const QExp& b) { return a += b; }
    friend QExp operator-(QExp a, const QExp& b) { return a -= b; }
    friend QExp operator*(const QExp& a, const QExp& b);
    friend QExp operator*(const CycNum& s, const QExp& a);
    friend bool operator==(const QExp& a, const QExp& b);
    friend bool operator!=(const QExp& a, const QExp& b) { return !(a == b); }

    void normalize();

private:
    std::int64_t w_ = 1;
    Rational prec_ = 0;
    std::map<std::int64_t, CycNum> c_;
};

enum class QOp { add, mul, scale };
QExp qexp_arith(const QExp& a, const QExp& b, QOp op);

// Normalization of the slash action by an upper triangular (a b; 0 d):
// det_half_weight: (a/d)^{k/2} f((a tau + b)/d); plain: d^{-k} f((a tau + b)/d).
enum class SlashNorm { det_half_weight, plain };

struct UpperTri {
    std::int64_t a, b, d;
};

QExp slash_upper(const QExp& f, int k, const UpperTri& m, SlashNorm norm = SlashNorm::det_half_weight);
inline QExp slash_upper(const QExp& f, int k, const DeltaElt& m, SlashNorm norm = SlashNorm::det_half_weight)
{
    return slash_upper(f, k, UpperTri{m.a, m.b, m.d}, norm);
}

struct VVForm {
    int weight = 0;
    RepPtr rep;
    std::vector<QExp> comps;

    const Rational& prec() const { return comps.front().prec(); }
};

// brings components to a common denominator and precision
VVForm make_vvform(int k, RepPtr rep, std::vector<QExp> comps);
VVForm scalar_form(int k, const QExp& f);

bool check_t_compat(const VVForm& f);

VVForm vv_hecke(const VVForm& f, std::int64_t M, SlashNorm norm = SlashNorm::det_half_weight);
VVForm vv_tensor(const VVForm& f, const VVForm& g);
VVForm vv_apply(const CycMatrix& F, const VVForm& f, const RepPtr& target);
// pairing with conj(v)
QExp vv_component(const VVForm& f, const CycVector& v);
// bilinear contraction sum_i v_i f_i
QExp vv_contract(const VVForm& f, const CycVector& v);
VVForm vv_combine(const std::vector<VVForm>& forms, const CycVector& coeffs);

json to_json(const QExp& f);
QExp qexp_from_json(const json& j);
json to_json(const VVForm& f);

}  // namespace vvef
