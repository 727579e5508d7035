#pragma once

#include <cstdint>
#include <string>

#include "prc/dataset.hpp"

namespace prc {

/// Recipe for synthetic subspace data: every class draws its samples from
/// a low-dimensional affine subspace plus isotropic Gaussian noise.
struct SynthSpec {
    std::size_t dim = 0;                // ambient dimension q
    std::size_t num_classes = 0;        // M
    std::size_t samples_per_class = 0;  // N_c
    std::size_t subspace_dim = 0;       // must be < dim
    double noise_sigma = 0.0;
    double separation = 0.0;  // norm of each class offset
    std::uint64_t seed = 0;
};

/// Generate a dataset per spec. The subspace basis stream is shared across
/// classes, so class hulls are parallel and `separation` alone controls
/// their overlap; coefficients, offsets and noise come from per-class
/// streams. Bit-identical for equal specs.
Dataset gen_synthetic_subspace(const SynthSpec& spec);

/// Parse "q=20,M=5,n=10,k=3,noise=0.05,sep=5" into a SynthSpec; `seed`
/// fills the spec's seed field. Unknown or malformed keys throw BadSpec.
SynthSpec parse_synth_spec(const std::string& text, std::uint64_t seed);

}  // namespace prc
