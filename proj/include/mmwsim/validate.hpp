#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mmwsim {

struct ValidationReport {
    int instances = 0;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> lines;  // one per property family
    bool ok() const { return failures == 0; }
};

// Runs the randomized invariant suite on `instances` independently seeded
// random scenarios. Each instance exercises every property family:
// Moore-Penrose identities, SVD reconstruction, phase-grid quantization,
// unit-norm precoder columns, RF-stage structure (constant modulus, grid
// phases, selection matrices, factor reconstruction), zero-forcing nulling,
// factorization objective monotonicity, disturbance-covariance Hermitian
// positive-definiteness, combiner-basis invariance of the spectral
// efficiency, and the energy-efficiency consistency identity.
// If log is non-null, a summary line per family is written to it.
ValidationReport run_validation(std::uint64_t seed, int instances, std::ostream* log = nullptr);

}  // namespace mmwsim
