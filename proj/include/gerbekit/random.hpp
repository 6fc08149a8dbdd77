#pragma once

#include <cstdint>
#include <random>

#include "gerbekit/cochain.hpp"

namespace gerbekit {

using Rng = std::mt19937_64;

// Independent stream derived from a seed and a label, so that instance i of a
// suite does not depend on how many draws earlier instances made.
Rng split_rng(std::uint64_t seed, std::uint64_t stream);

struct RandomFormShape {
    int max_freq = 3;
    int max_terms = 5;
    bool hermitian = true;
};

TrigForm random_trigform(Rng& rng, int ambient_dim, int degree, const RandomFormShape& shape = {});
// Random cochain with every level populated on the nerve of its cover; the
// integer level draws from {-2..2}. Non-flat unless `flat`.
DiffCochain random_cochain(Rng& rng, int degree, const CoverPtr& cover, bool flat = false,
                           const RandomFormShape& shape = {});
// Cocycle from_global_form(T) + total_d(beta) with random T and beta.
DiffCochain random_cocycle(Rng& rng, int degree, const CoverPtr& cover, const RandomFormShape& shape = {});
// Flat coboundary total_d(beta) of a random flat cochain of one degree less.
DiffCochain random_flat_coboundary(Rng& rng, int degree, const CoverPtr& cover, const RandomFormShape& shape = {});

}  // namespace gerbekit
