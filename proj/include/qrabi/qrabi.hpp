#ifndef QRABI_QRABI_HPP
#define QRABI_QRABI_HPP

#include "errors.hpp"
#include "fock_space.hpp"
#include "hermite.hpp"
#include "log_scaled.hpp"
#include "mode_params.hpp"
#include "photon_stats.hpp"
#include "rabi_dynamics.hpp"
#include "scalar_search.hpp"
#include "squeeze_optimizer.hpp"
#include "summation.hpp"
#include "verify.hpp"

#endif
