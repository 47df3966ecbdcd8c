#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "compute_verify/errors.hpp"

namespace compute_verify {

// Base units used throughout: bytes, bytes/s, FLOP, FLOP/s, watts, seconds.
// All magnitudes are doubles; decimal SI prefixes only (1 GB = 1e9 bytes).

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerHour = 3600.0;

/// FLOP per token-parameter for one training step (forward + backward).
inline constexpr double kFlopPerTokenParam = 6.0;

/// Default all-in power per chip, from a DGX H100 system (10.2 kW / 8 GPUs).
inline constexpr double kDefaultChipPowerWatts = 1275.0;

// ---------------------------------------------------------------------------
// Domain specs
// ---------------------------------------------------------------------------

/// The trained or served model under analysis.
struct ModelSpec {
    double params = 0;            ///< parameter count
    std::uint64_t d_model = 0;    ///< activation width per token
    std::uint64_t vocab_size = 0;
    int weight_bits = 16;
    int grad_bits = 16;
    int act_bits = 16;

    void validate() const;
};

struct ChipSpec {
    double peak_flops = 0;      ///< FLOP/s
    double achieved_flops = 0;  ///< FLOP/s, utilization-adjusted
    double power_watts = kDefaultChipPowerWatts;  ///< all-in per chip

    void validate() const;
};

/// The unit of monitoring: chips with high mutual interconnect and a capped
/// link to everything outside. No inter_pod_limit means unlimited.
struct PodSpec {
    ChipSpec chip;
    std::uint64_t n_chips = 0;
    std::optional<double> inter_pod_limit;  ///< bytes/s per direction

    void validate() const;
};

struct BatchSpec {
    std::uint64_t seq_len = 0;       ///< tokens per sequence
    std::uint64_t seqs_per_pod = 0;  ///< sequences per pod per step
    double global_batch_tokens = 0;  ///< tokens per global step

    void validate() const;
};

// ---------------------------------------------------------------------------
// Quantities
// ---------------------------------------------------------------------------

enum class Dimension {
    data,          // base: bytes
    data_rate,     // base: bytes/s
    compute,       // base: FLOP
    compute_rate,  // base: FLOP/s
    power,         // base: watts
    time,          // base: seconds
};

std::string_view dimension_name(Dimension d);

/// A unit is a dimension plus an exact scale to the base unit of that
/// dimension, e.g. {data_rate, 125000, "Mb/s"}.
struct Unit {
    Dimension dim;
    double to_base;
    std::string symbol;

    bool operator==(const Unit& other) const {
        return dim == other.dim && to_base == other.to_base;
    }
};

/// Parses unit symbols: decimal SI prefixes (k/K, M, G, T, P, E) over
/// B, b, B/s, b/s, FLOP, FLOP/s, W, plus s/min/h/days. Binary prefixes
/// (KiB, MiB, ...) are rejected.
Unit parse_unit(std::string_view symbol);

/// Magnitude + unit tag. Additive arithmetic never mixes dimensions.
struct Quantity {
    double magnitude = 0;
    Unit unit;

    double in_base() const { return magnitude * unit.to_base; }

    Quantity operator+(const Quantity& rhs) const;
    Quantity operator-(const Quantity& rhs) const;
    Quantity operator*(double scalar) const;
    /// Ratio of two quantities of the same dimension (dimensionless).
    double operator/(const Quantity& rhs) const;
};

/// Rescales q into target_unit. Throws UnitError on dimension mismatch.
/// Round trips are exact to within 1 ulp.
Quantity convert(const Quantity& q, const Unit& target_unit);

/// Parses "125 KB/s", "812GB", "6.2 s", ... into a Quantity.
Quantity parse_quantity(std::string_view text);

/// Formats a base-unit value with an auto-selected SI prefix, e.g.
/// format_rate(131e9) == "131 GB/s".
std::string format_bytes(double bytes);
std::string format_rate(double bytes_per_s);
std::string format_power(double watts);
std::string format_flop(double flop);
std::string format_duration(double seconds);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Bits needed for an uncompressed token index: ceil(log2(vocab_size)).
/// Throws SpecError for vocab_size < 2.
int bits_per_token(std::uint64_t vocab_size);

/// Expected all-in power draw of a pod: n_chips * power_watts.
double pod_power_watts(const PodSpec& pod);

}  // namespace compute_verify
