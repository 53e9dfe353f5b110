#pragma once

#include "vvef/qseries.hpp"
#include "vvef/representations.hpp"

#include <string>
#include <vector>

namespace vvef {

// Weight 12, level 3: components of T_3 E_4 (x) T_3 E_8 against the T-fixed vectors f_1..f_4,
// and the newform q + 78 q^2 - 243 q^3 + 4036 q^4 expressed in them.
struct Level3Example {
    CycMatrix rhoT_T, rhoT_S;
    std::size_t t_fixed_dim = 0;
    std::size_t t_fixed_rank_with_fs = 0;  // rank of t_fixed basis together with f_1..f_4
    std::size_t fs_rank = 0;
    bool fs_fixed = false;                   // each f_i is fixed by (rho_T x rho_T)(T)
    std::size_t invariant_dim = 0;           // SL2(Z)-invariant vectors
    std::size_t fs_plus_invariants_rank = 0;
    std::size_t hom_dim_rho3 = 0;
    std::vector<CycVector> fvecs;
    std::vector<QExp> f;
    QExp newform;
    CycVector newform_coeffs;
    std::size_t newform_kernel_dim = 0;
    bool newform_solved = false;
    QExp recombined;  // sum c_i f_i
};

// the four T-fixed vectors in the basis e_i (x) e_j, index 4 (i - 1) + (j - 1)
std::vector<CycVector> level3_fixed_vectors();

Level3Example level3_example();

struct ExampleCheck {
    std::string name;
    bool pass;
    std::string got, expected;
};

// compares against the printed tables
std::vector<ExampleCheck> level3_example_checks(const Level3Example& ex);

}  // namespace vvef
