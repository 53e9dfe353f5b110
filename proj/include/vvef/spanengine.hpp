#pragma once

#include "vvef/eisenstein.hpp"
#include "vvef/qseries.hpp"
#include "vvef/representations.hpp"

#include <functional>
#include <optional>
#include <variant>

namespace vvef {

std::int64_t sturm_bound(int k, std::int64_t N);
std::int64_t dim_Mk(int k, std::int64_t N);
std::int64_t dim_Sk(int k, std::int64_t N);
std::int64_t cusp_count(std::int64_t N);

struct GammaZeroInvariants {
    std::int64_t index, nu2, nu3, cusps, genus;
};
GammaZeroInvariants gamma0_invariants(std::int64_t N);

// E_l at level N tensored with E_{k-l} at level N'
VVForm hecke_eis_product(int k, int l, std::int64_t N, std::int64_t Nprime, long prec,
                         SlashNorm norm = SlashNorm::plain);

std::vector<VVForm> product_space(int k, int l, std::int64_t N, std::int64_t Nprime, const RepPtr& target, long prec,
                                  SlashNorm norm = SlashNorm::plain);
std::vector<VVForm> product_space(int k, int l, std::int64_t N, std::int64_t Nprime, const HomBasis& hom, long prec,
                                  SlashNorm norm = SlashNorm::plain);

// row r of each Hom basis element applied to the product, without building the full forms
std::vector<QExp> product_components(int k, int l, std::int64_t N, std::int64_t Nprime, const HomBasis& hom,
                                     std::size_t row, long prec, SlashNorm norm = SlashNorm::plain);

using HomProvider = std::function<HomBasis(const RepPtr& source, const RepPtr& target)>;

struct SpanOptions {
    int parallel = 1;
    bool early_stop = true;
    HomProvider hom;  // defaults to hom_space
    // receives the classical forms that raised the augmented rank, Eisenstein series first
    std::vector<QExp>* generators = nullptr;
};

struct PairRecord {
    std::int64_t N, Nprime;
    std::size_t hom_dim;
    std::size_t rank_after;
    std::size_t product_rank_after;
};

struct SpanReport {
    int k = 0, l = 0;
    std::int64_t level = 1, nmax = 0;
    long prec = 0;
    std::int64_t sturm = 0;
    std::int64_t dim_mk = 0, dim_sk = 0;
    std::size_t eis_count = 0, t_fixed_dim = 0;
    std::vector<PairRecord> pairs;
    std::size_t product_rank = 0;
    std::size_t augmented_rank = 0;
    bool spanned = false;

    std::string verdict() const { return spanned ? "spanned" : "not spanned"; }
};

// (N, N') with 1 <= N, N' <= nmax in search order
std::vector<std::pair<std::int64_t, std::int64_t>> pair_order(std::int64_t nmax);

SpanReport span_check(int k, int l, std::int64_t level, std::int64_t nmax, long prec, const SpanOptions& opt = {});

json to_json(const SpanReport& r);

struct Expression {
    CycVector coeffs;
    std::size_t kernel_dim = 0;
    bool certified = false;  // precision reaches the Sturm bound
};

std::variant<Expression, NoSolution> express(const QExp& target, int k, std::int64_t N, const std::vector<QExp>& basis,
                                             long prec);

// the coset of Gamma0(N) \ SL2(Z) containing (a x; c y), gcd(a, c) = 1
std::size_t cusp_coset(std::int64_t N, std::int64_t a, std::int64_t c);
QExp cusp_expansion(const VVForm& f, std::size_t coset_index);
QExp cusp_expansion(const VVForm& f, std::int64_t a, std::int64_t c);

}  // namespace vvef
