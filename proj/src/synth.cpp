#include "prc/synth.hpp"

#include <charconv>
#include <cmath>

#include "prc/rng.hpp"

namespace prc {

namespace {

constexpr std::uint64_t kBasisStream = 0;

void validate(const SynthSpec& spec) {
    if (spec.dim < 2) throw Error(ErrorKind::BadSpec, "dim must be at least 2");
    if (spec.num_classes < 1) throw Error(ErrorKind::BadSpec, "need at least one class");
    if (spec.samples_per_class < 1) throw Error(ErrorKind::BadSpec, "need at least one sample per class");
    if (spec.subspace_dim < 1 || spec.subspace_dim >= spec.dim)
        throw Error(ErrorKind::BadSpec, "subspace_dim must be in [1, dim)");
    if (!(spec.noise_sigma >= 0.0)) throw Error(ErrorKind::BadSpec, "noise_sigma must be >= 0");
    if (!(spec.separation >= 0.0)) throw Error(ErrorKind::BadSpec, "separation must be >= 0");
}

std::vector<Vector> draw_orthonormal_basis(Rng rng, std::size_t q, std::size_t k) {
    std::vector<Vector> basis;
    basis.reserve(k);
    while (basis.size() < k) {
        Vector v(q);
        for (double& e : v) e = rng.next_gaussian();
        for (const Vector& b : basis) {
            const double proj = dot(v, b);
            for (std::size_t r = 0; r < q; ++r) v[r] -= proj * b[r];
        }
        const double n = norm(v);
        if (n < 1e-8) continue;  // essentially impossible; redraw
        for (double& e : v) e /= n;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

Dataset gen_synthetic_subspace(const SynthSpec& spec) {
    validate(spec);
    const std::size_t q = spec.dim;
    const Rng base(spec.seed);
    const auto basis = draw_orthonormal_basis(base.stream(kBasisStream), q, spec.subspace_dim);

    Dataset data;
    data.dim = q;
    data.classes.resize(spec.num_classes);
    for (std::size_t c = 0; c < spec.num_classes; ++c) {
        data.labels.push_back("class" + std::to_string(c));
        Rng rng = base.stream(c + 1);

        Vector offset(q);
        for (double& e : offset) e = rng.next_gaussian();
        const double offset_norm = norm(offset);
        const double scale = offset_norm > 0.0 ? spec.separation / offset_norm : 0.0;
        for (double& e : offset) e *= scale;

        data.classes[c].reserve(spec.samples_per_class);
        for (std::size_t s = 0; s < spec.samples_per_class; ++s) {
            Vector sample = offset;
            for (std::size_t k = 0; k < spec.subspace_dim; ++k) {
                const double coeff = rng.next_gaussian();
                for (std::size_t r = 0; r < q; ++r) sample[r] += coeff * basis[k][r];
            }
            for (std::size_t r = 0; r < q; ++r) sample[r] += spec.noise_sigma * rng.next_gaussian();
            data.classes[c].push_back(std::move(sample));
        }
    }
    return data;
}

SynthSpec parse_synth_spec(const std::string& text, std::uint64_t seed) {
    SynthSpec spec;
    spec.seed = seed;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        const std::string_view item(text.data() + pos, end - pos);
        pos = end + 1;
        if (item.empty()) continue;
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorKind::BadSpec, "expected key=value, got '" + std::string(item) + "'");
        const std::string_view key = item.substr(0, eq);
        const std::string_view value = item.substr(eq + 1);

        auto parse_count = [&](std::size_t& out) {
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
            if (ec != std::errc{} || ptr != value.data() + value.size())
                throw Error(ErrorKind::BadSpec, "bad count for '" + std::string(key) + "'");
        };
        auto parse_real = [&](double& out) {
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
            if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out))
                throw Error(ErrorKind::BadSpec, "bad number for '" + std::string(key) + "'");
        };

        if (key == "q") parse_count(spec.dim);
        else if (key == "M") parse_count(spec.num_classes);
        else if (key == "n") parse_count(spec.samples_per_class);
        else if (key == "k") parse_count(spec.subspace_dim);
        else if (key == "noise") parse_real(spec.noise_sigma);
        else if (key == "sep") parse_real(spec.separation);
        else throw Error(ErrorKind::BadSpec, "unknown key '" + std::string(key) + "'");
    }
    validate(spec);
    return spec;
}

}  // namespace prc
