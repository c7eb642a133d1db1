#pragma once

#include "pqcmc/bench.hpp"
#include "pqcmc/bytes.hpp"
#include "pqcmc/certs.hpp"
#include "pqcmc/containers.hpp"
#include "pqcmc/ecqv.hpp"
#include "pqcmc/errors.hpp"
#include "pqcmc/gf2_matrix.hpp"
#include "pqcmc/mceliece.hpp"
#include "pqcmc/prng.hpp"
#include "pqcmc/protocol.hpp"
#include "pqcmc/rand_gen.hpp"
#include "pqcmc/sha256.hpp"
