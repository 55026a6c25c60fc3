#ifndef ISOLAB_ISOLAB_HPP
#define ISOLAB_ISOLAB_HPP

#include "cochar.hpp"
#include "coeffs.hpp"
#include "errors.hpp"
#include "invariants.hpp"
#include "io.hpp"
#include "laurent.hpp"
#include "matl.hpp"
#include "render.hpp"
#include "resgroups.hpp"
#include "sampling.hpp"

#endif // ISOLAB_ISOLAB_HPP
