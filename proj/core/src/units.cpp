#include "compute_verify/units.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace compute_verify {

namespace {

bool valid_width(int bits) {
    return bits == 4 || bits == 8 || bits == 16 || bits == 32 || bits == 64;
}

[[noreturn]] void fail_spec(const std::string& what) { throw SpecError(what); }

}  // namespace

void ModelSpec::validate() const {
    if (!(params > 0)) fail_spec("ModelSpec.params must be > 0");
    if (d_model == 0) fail_spec("ModelSpec.d_model must be > 0");
    if (vocab_size == 0) fail_spec("ModelSpec.vocab_size must be > 0");
    if (!valid_width(weight_bits)) fail_spec("ModelSpec.weight_bits must be one of 4/8/16/32/64");
    if (!valid_width(grad_bits)) fail_spec("ModelSpec.grad_bits must be one of 4/8/16/32/64");
    if (!valid_width(act_bits)) fail_spec("ModelSpec.act_bits must be one of 4/8/16/32/64");
}

void ChipSpec::validate() const {
    if (!(achieved_flops > 0)) fail_spec("ChipSpec.achieved_flops must be > 0");
    if (!(peak_flops >= achieved_flops))
        fail_spec("ChipSpec.achieved_flops must not exceed peak_flops");
    if (!(power_watts > 0)) fail_spec("ChipSpec.power_watts must be > 0");
}

void PodSpec::validate() const {
    chip.validate();
    if (n_chips == 0) fail_spec("PodSpec.n_chips must be > 0");
    if (inter_pod_limit && !(*inter_pod_limit > 0))
        fail_spec("PodSpec.inter_pod_limit must be > 0 when present");
}

void BatchSpec::validate() const {
    if (seq_len == 0) fail_spec("BatchSpec.seq_len must be > 0");
    if (seqs_per_pod == 0) fail_spec("BatchSpec.seqs_per_pod must be > 0");
    const double pod_tokens = static_cast<double>(seq_len) * static_cast<double>(seqs_per_pod);
    if (!(global_batch_tokens >= pod_tokens))
        fail_spec("BatchSpec.global_batch_tokens must cover at least one pod batch");
}

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

std::string_view dimension_name(Dimension d) {
    switch (d) {
        case Dimension::data: return "data";
        case Dimension::data_rate: return "data rate";
        case Dimension::compute: return "compute";
        case Dimension::compute_rate: return "compute rate";
        case Dimension::power: return "power";
        case Dimension::time: return "time";
    }
    return "?";
}

namespace {

struct Prefix {
    char symbol;
    double factor;
};

constexpr std::array<Prefix, 9> kPrefixes = {{
    {'k', 1e3}, {'M', 1e6}, {'G', 1e9}, {'T', 1e12}, {'P', 1e15}, {'E', 1e18},
    {'m', 1e-3}, {'u', 1e-6}, {'n', 1e-9},
}};

std::optional<double> prefix_factor(char c) {
    if (c == 'K') c = 'k';  // KB and kB both seen in the wild
    for (const auto& p : kPrefixes)
        if (p.symbol == c) return p.factor;
    return std::nullopt;
}

// Unit stems in base units: bytes, bytes/s, FLOP, FLOP/s, W, s.
std::optional<Unit> stem_unit(std::string_view sv) {
    const std::string s(sv);
    if (s == "B") return Unit{Dimension::data, 1.0, "B"};
    if (s == "b") return Unit{Dimension::data, 1.0 / 8.0, "b"};
    if (s == "B/s") return Unit{Dimension::data_rate, 1.0, "B/s"};
    if (s == "b/s" || s == "bps") return Unit{Dimension::data_rate, 1.0 / 8.0, "b/s"};
    if (s == "FLOP") return Unit{Dimension::compute, 1.0, "FLOP"};
    if (s == "FLOP/s") return Unit{Dimension::compute_rate, 1.0, "FLOP/s"};
    if (s == "W") return Unit{Dimension::power, 1.0, "W"};
    if (s == "s") return Unit{Dimension::time, 1.0, "s"};
    if (s == "min") return Unit{Dimension::time, 60.0, "min"};
    if (s == "h") return Unit{Dimension::time, 3600.0, "h"};
    if (s == "days" || s == "d") return Unit{Dimension::time, kSecondsPerDay, "days"};
    return std::nullopt;
}

}  // namespace

Unit parse_unit(std::string_view symbol) {
    std::string s(symbol);
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw UnitError("empty unit");

    // KiB/MiB/... pattern.
    if (s.size() >= 3 && s[1] == 'i' && (s[2] == 'B' || s[2] == 'b') && prefix_factor(s[0]))
        throw UnitError("binary prefixes are not accepted: '" + s +
                        "' (decimal SI only, 1 GB = 1e9 bytes)");

    if (auto u = stem_unit(s)) return *u;

    if (s.size() >= 2) {
        if (auto factor = prefix_factor(s[0])) {
            if (auto u = stem_unit(std::string_view(s).substr(1))) {
                if (u->dim == Dimension::time)
                    throw UnitError("SI prefixes on time units are not supported: '" + s + "'");
                return Unit{u->dim, *factor * u->to_base, s};
            }
        }
    }
    throw UnitError("unknown unit '" + std::string(symbol) + "'");
}

Quantity Quantity::operator+(const Quantity& rhs) const {
    if (unit.dim != rhs.unit.dim)
        throw UnitError(std::string("cannot add ") + std::string(dimension_name(unit.dim)) +
                        " and " + std::string(dimension_name(rhs.unit.dim)));
    return {magnitude + rhs.magnitude * (rhs.unit.to_base / unit.to_base), unit};
}

Quantity Quantity::operator-(const Quantity& rhs) const {
    if (unit.dim != rhs.unit.dim)
        throw UnitError(std::string("cannot subtract ") + std::string(dimension_name(rhs.unit.dim)) +
                        " from " + std::string(dimension_name(unit.dim)));
    return {magnitude - rhs.magnitude * (rhs.unit.to_base / unit.to_base), unit};
}

Quantity Quantity::operator*(double scalar) const { return {magnitude * scalar, unit}; }

double Quantity::operator/(const Quantity& rhs) const {
    if (unit.dim != rhs.unit.dim)
        throw UnitError("ratio requires matching dimensions");
    return in_base() / rhs.in_base();
}

Quantity convert(const Quantity& q, const Unit& target_unit) {
    if (q.unit.dim != target_unit.dim)
        throw UnitError("cannot convert " + std::string(dimension_name(q.unit.dim)) + " to " +
                        std::string(dimension_name(target_unit.dim)));
    return {q.magnitude * (q.unit.to_base / target_unit.to_base), target_unit};
}

Quantity parse_quantity(std::string_view text) {
    const std::string s(text);
    std::size_t pos = 0;
    double magnitude = 0;
    try {
        magnitude = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UnitError("cannot parse quantity '" + s + "'");
    }
    if (magnitude < 0) throw UnitError("quantity magnitudes are non-negative: '" + s + "'");
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == s.size()) throw UnitError("quantity '" + s + "' is missing a unit");
    return Quantity{magnitude, parse_unit(std::string_view(s).substr(pos))};
}

namespace {

std::string format_scaled(double base_value, const char* base_symbol) {
    static constexpr std::array<std::pair<double, const char*>, 6> kScales = {{
        {1e18, "E"}, {1e15, "P"}, {1e12, "T"}, {1e9, "G"}, {1e6, "M"}, {1e3, "k"},
    }};
    double scale = 1.0;
    const char* prefix = "";
    const double mag = std::fabs(base_value);
    for (const auto& [factor, sym] : kScales) {
        if (mag >= factor) {
            scale = factor;
            prefix = sym;
            break;
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g %s%s", base_value / scale, prefix, base_symbol);
    return buf;
}

}  // namespace

std::string format_bytes(double bytes) { return format_scaled(bytes, "B"); }
std::string format_rate(double bytes_per_s) { return format_scaled(bytes_per_s, "B/s"); }
std::string format_power(double watts) { return format_scaled(watts, "W"); }
std::string format_flop(double flop) { return format_scaled(flop, "FLOP"); }

std::string format_duration(double seconds) {
    char buf[64];
    if (seconds >= kSecondsPerDay) {
        std::snprintf(buf, sizeof(buf), "%.4g days", seconds / kSecondsPerDay);
    } else if (seconds >= 3600.0) {
        std::snprintf(buf, sizeof(buf), "%.4g h", seconds / 3600.0);
    } else {
        std::snprintf(buf, sizeof(buf), "%.4g s", seconds);
    }
    return buf;
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

int bits_per_token(std::uint64_t vocab_size) {
    if (vocab_size < 2) throw SpecError("bits_per_token requires vocab_size >= 2");
    // ceil(log2(v)), exact: width of (v - 1).
    return std::bit_width(vocab_size - 1);
}

double pod_power_watts(const PodSpec& pod) {
    pod.validate();
    return static_cast<double>(pod.n_chips) * pod.chip.power_watts;
}

}  // namespace compute_verify
