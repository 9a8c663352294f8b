#include "fpent/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fpent/parallel.hpp"
#include "fpent/special.hpp"

namespace fpent {
namespace {

using Counts = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(chunk),
                      std::uint32_t(chunk >> 32)};
    return std::mt19937_64(seq);
}

// Run-length encode sorted keys.
Counts tally(std::vector<std::uint64_t>& keys) {
    std::sort(keys.begin(), keys.end());
    Counts out;
    for (std::uint64_t k : keys) {
        if (!out.empty() && out.back().first == k)
            ++out.back().second;
        else
            out.emplace_back(k, 1);
    }
    return out;
}

// key_of(rng) draws one sample and returns its bin key.
template <class KeyOf>
McResult run(const McConfig& cfg, KeyOf&& key_of) {
    if (cfg.sample_count == 0) throw std::invalid_argument("sample_count must be positive");
    const std::uint64_t n = cfg.sample_count;
    const std::size_t n_chunks = (n + mc_chunk_size - 1) / mc_chunk_size;
    std::vector<Counts> per_chunk(n_chunks);
    for_each_chunk(n_chunks, [&](std::size_t c) {
        auto rng = chunk_rng(cfg.seed, c);
        const std::uint64_t m = std::min(mc_chunk_size, n - c * mc_chunk_size);
        std::vector<std::uint64_t> keys(m);
        for (auto& k : keys) k = key_of(rng);
        per_chunk[c] = tally(keys);
    });
    Counts all;
    for (const auto& c : per_chunk) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    Counts merged;
    for (const auto& [k, c] : all) {
        if (!merged.empty() && merged.back().first == k)
            merged.back().second += c;
        else
            merged.emplace_back(k, c);
    }
    return plugin_entropy(merged, cfg.bias_correction);
}

// A draw of exactly zero has no bin; it is redrawn.
template <class Draw>
double nonzero(std::mt19937_64& rng, Draw&& draw) {
    for (;;) {
        const double x = draw(rng);
        if (x != 0.0) return x;
    }
}

}  // namespace

McResult plugin_entropy(std::span<const std::pair<std::uint64_t, std::uint64_t>> counts, bool bias_correction) {
    McResult r;
    r.bias_corrected = bias_correction;
    for (const auto& kc : counts) r.samples += kc.second;
    r.occupied_bins = counts.size();
    if (r.samples == 0) throw std::invalid_argument("no samples");
    const double n = double(r.samples);
    CompensatedSum h, h2;
    for (const auto& [k, c] : counts) {
        if (c == 0) continue;
        const double q = double(c) / n;
        const double l = std::log2(q);
        h.add(-q * l);
        h2.add(q * l * l);
    }
    const double H = h.value();
    r.std_error = std::sqrt(std::max(0.0, h2.value() - H * H) / n);
    r.estimate = H;
    if (bias_correction) r.estimate += double(r.occupied_bins - 1) / (2.0 * n * special::ln2);
    return r;
}

McResult mc_entropy(const Distribution& dist, const FpFormat& fmt, const McConfig& cfg) {
    RepresentableGrid grid(fmt);
    return run(cfg, [&](std::mt19937_64& rng) {
        const double x = nonzero(rng, [&](std::mt19937_64& g) { return dist.sample(g); });
        return grid.index_of(encode(x, fmt));
    });
}

McResult mc_entropy(const Distribution& dist, std::span<const double> values, const McConfig& cfg) {
    if (values.empty()) throw std::invalid_argument("quantizer needs at least one value");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i - 1] < values[i])) throw std::invalid_argument("quantizer values must be strictly increasing");
    std::vector<double> edges;
    for (std::size_t i = 1; i < values.size(); ++i) edges.push_back(0.5 * (values[i - 1] + values[i]));
    return run(cfg, [&](std::mt19937_64& rng) {
        const double x = dist.sample(rng);
        return std::uint64_t(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin());
    });
}

McResult mc_entropy(const MultivariateGaussian& dist, const FpFormat& fmt, const McConfig& cfg) {
    const std::size_t d = dist.dimension();
    const int bits = fmt.precision() + fmt.exponent_bits();
    if (d * bits > 64)
        throw std::invalid_argument("joint bin of " + std::to_string(d) + " components of " + fmt.to_string() +
                                    " does not fit a 64-bit key");
    RepresentableGrid grid(fmt);
    return run(cfg, [&](std::mt19937_64& rng) {
        double buf[64];
        std::span<double> x(buf, d);
        for (;;) {
            dist.sample(rng, x);
            if (std::none_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) break;
        }
        std::uint64_t key = 0;
        for (std::size_t j = 0; j < d; ++j) key |= grid.index_of(encode(x[j], fmt)) << (j * bits);
        return key;
    });
}

}  // namespace fpent
