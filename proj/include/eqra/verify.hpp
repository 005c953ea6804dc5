#pragma once

#include <cstdint>
#include <vector>

#include "eqra/certificate.hpp"
#include "eqra/closure.hpp"
#include "eqra/pp.hpp"

namespace eqra {

struct RunConfig {
    std::size_t atom_budget = kDefaultAtomBudget;
    PpBudget pp_budget{4, 6};
    bool json = false;
    bool unsafe = false;  // also run the M checks outside 1 <= n < p-2
    bool quiet = false;
    bool timing = false;
    std::size_t jobs = 1;
    std::uint64_t seed = 20240601;
};

// Every distinct pair of kernels on Z_p^2 composes to the universal
// relation, checked by brute force and by the explicit witnesses.
Certificate verify_lemma(long p);

// Eq(RA(M)) = M together with the atom structure identities.
Certificate verify_lemma1(long p, long n, const RunConfig& config = {});

// The four-element example: closure adds gamma, PPF side stays L.
Certificate verify_example_2x2(const RunConfig& config = {});

// The pp definition of alpha_{p-1} and its absence from RA(M).
Certificate verify_pp_side(long p, const RunConfig& config = {});

// {1', eta0, eta1, alpha_k, 1} is M_{p+1}; also Con(Z_p^2) when p^2 <= 10.
Certificate verify_con_shape(long p);

struct PropertyCounts {
    std::size_t ra_vs_fo3 = 200;
    std::size_t pp_vs_fo = 200;
    std::size_t parser_roundtrip = 500;
    std::size_t closure_sets = 100;
};

Certificate verify_properties(std::uint64_t seed, PropertyCounts counts = {});

// Runs every reproduction section; errors become failing checks.
Certificate verify_all(const RunConfig& config = {});

// (p, n) pairs checked by verify_all.
const std::vector<std::pair<long, long>>& lemma1_cases();

}  // namespace eqra
