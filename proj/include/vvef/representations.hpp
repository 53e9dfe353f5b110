#pragma once

#include "vvef/characters.hpp"
#include "vvef/linalg.hpp"
#include "vvef/modgroup.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vvef {

class Rep;
using RepPtr = std::shared_ptr<const Rep>;

enum class RepKind { Trivial, Induced, Hecke, Tensor, Dual, Sum, Explicit };

// Column j of a monomial matrix has its single nonzero entry val[j] in row perm[j].
struct Monomial {
    std::vector<std::size_t> perm;
    std::vector<CycNum> val;
};

class Rep {
public:
    RepKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    long level() const { return level_; }
    const CycMatrix& mat_S() const { return S_; }
    const CycMatrix& mat_T() const { return T_; }
    const CycMatrix& mat_Tinv() const { return Tinv_; }
    const std::optional<Monomial>& mono_S() const { return monoS_; }
    const std::optional<Monomial>& mono_T() const { return monoT_; }
    bool is_monomial() const { return monoS_.has_value() && monoT_.has_value(); }

    // structural data
    std::int64_t param() const { return param_; }  // N for Induced, M for Hecke
    const std::optional<DirichletChar>& character() const { return chi_; }
    const std::vector<RepPtr>& children() const { return children_; }
    const std::string& spec() const { return spec_; }

    CycMatrix evaluate(const Mat2& g) const;

    friend RepPtr trivial_rep();
    friend RepPtr induced_gamma0(std::int64_t N, const DirichletChar& chi);
    friend RepPtr hecke_rep(std::int64_t M, const RepPtr& rho);
    friend RepPtr tensor_rep(const RepPtr& a, const RepPtr& b);
    friend RepPtr dual_rep(const RepPtr& a);
    friend RepPtr sum_rep(const std::vector<RepPtr>& parts);
    friend RepPtr explicit_rep(const CycMatrix& S, const CycMatrix& T, const std::string& name);

private:
    RepKind kind_ = RepKind::Trivial;
    std::size_t dim_ = 1;
    long level_ = 1;
    CycMatrix S_, T_, Tinv_;
    std::optional<Monomial> monoS_, monoT_;
    std::int64_t param_ = 1;
    std::optional<DirichletChar> chi_;
    std::vector<RepPtr> children_;
    std::string spec_;

    void finish();
    CycMatrix evaluate_structural(const Mat2& g) const;
};

RepPtr trivial_rep();
RepPtr induced_gamma0(std::int64_t N, const DirichletChar& chi);
RepPtr hecke_rep(std::int64_t M, const RepPtr& rho);
RepPtr tensor_rep(const RepPtr& a, const RepPtr& b);
RepPtr dual_rep(const RepPtr& a);
RepPtr sum_rep(const std::vector<RepPtr>& parts);
RepPtr explicit_rep(const CycMatrix& S, const CycMatrix& T, const std::string& name = "explicit");

inline CycMatrix evaluate(const RepPtr& rho, const Mat2& g) { return rho->evaluate(g); }

// S^4 = 1 and (ST)^3 = S^2
bool check_relations(const Rep& rho);

std::optional<Monomial> as_monomial(const CycMatrix& m);

struct HomBasis {
    RepPtr source, target;
    std::vector<CycMatrix> basis;
    std::size_t dim() const { return basis.size(); }
};

HomBasis hom_space(const RepPtr& source, const RepPtr& target);
bool is_intertwiner(const CycMatrix& F, const Rep& source, const Rep& target);

std::vector<CycVector> t_fixed(const Rep& rho);

json rep_info_json(const Rep& rho);

}  // namespace vvef
