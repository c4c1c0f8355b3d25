#pragma once

#include "hho/hybrid_field.hpp"
#include "hho/space.hpp"

namespace hho {

/// ||v||_{a,h} = sqrt(sum_T (grad R_T v, grad R_T v)_T + s_T(v, v))
double energy_norm(const HhoSpace& space, const HybridField& v);

/// ||v||_{1,h} = sqrt(sum_T ||grad v_T||_T^2 + sum_F h_F^-1 ||v_F - v_T||_F^2)
double one_norm(const HhoSpace& space, const HybridField& v);

/// ||grad R_h v||
double grad_recon_norm(const HhoSpace& space, const HybridField& v);

/// ||v_h|| using the cell components only.
double cell_l2_norm(const HhoSpace& space, const HybridField& v);

/// ||g|| in L2(Omega) with the space's cell rules.
double l2_norm(const HhoSpace& space, const ScalarField& g);

} // namespace hho
