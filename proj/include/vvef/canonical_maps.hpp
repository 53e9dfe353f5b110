#pragma once

#include "vvef/representations.hpp"

#include <optional>

namespace vvef {

enum class MapKind { hecke, al, old, twist, id, diag, adj, unit };

struct CanonicalMap {
    MapKind kind;
    RepPtr source, target;
    CycMatrix inclusion;
    CycMatrix projection;           // conjugate transpose of the inclusion
    std::optional<CycNum> scalar;   // s with projection * inclusion = s * I, when it is scalar
};

// 1 -> sum_m e_m in T_M 1
CanonicalMap unit_map(std::int64_t M);
// Ind chi -> T_M Ind chi, gcd(M, N) = 1
CanonicalMap hecke_map(std::int64_t M, const DirichletChar& chi, int k);
// Ind chi' -> T_M Ind chi, M | N, gcd(M, N/M) = 1
CanonicalMap al_map(std::int64_t M, const DirichletChar& chi);
// Ind_{Gamma0(MN)} chi -> T_M Ind_{Gamma0(N)} chi
CanonicalMap old_map(std::int64_t M, const DirichletChar& chi, int k);
// Ind_{Gamma0(N M^2)} chi eps^2 -> T_{M^2} Ind chi
CanonicalMap twist_map(const DirichletChar& eps, const DirichletChar& chi, int k);
// Ind chi -> T_{M^2} Ind chi
CanonicalMap id_map(std::int64_t M, const DirichletChar& chi);
// Ind 1 -> Ind chi (x) Ind conj(chi)
CanonicalMap diag_map(const DirichletChar& chi);
// rho -> T_M T_M rho
CanonicalMap adj_map(std::int64_t M, const RepPtr& rho);

// the character mod N equal to conj(chi) mod M and chi mod N/M
DirichletChar al_character(std::int64_t M, const DirichletChar& chi);

}  // namespace vvef
