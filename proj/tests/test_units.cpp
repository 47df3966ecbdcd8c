#include <doctest.h>

#include <cmath>
#include <random>

#include "compute_verify/units.hpp"

using namespace compute_verify;

namespace {

bool within_one_ulp(double a, double b) {
    return a == b || (a >= std::nextafter(b, -INFINITY) && a <= std::nextafter(b, INFINITY));
}

PodSpec make_pod(std::uint64_t n_chips, double power_watts) {
    PodSpec pod;
    pod.chip = {1e15, 400e12, power_watts};
    pod.n_chips = n_chips;
    return pod;
}

}  // namespace

TEST_CASE("bits_per_token matches the conservative uncompressed encoding") {
    CHECK(bits_per_token(128000) == 17);  // 2^17 > 128,000
    CHECK(bits_per_token(2) == 1);
    CHECK(bits_per_token(65536) == 16);
    CHECK_THROWS_AS(bits_per_token(1), SpecError);
    CHECK_THROWS_AS(bits_per_token(0), SpecError);
}

TEST_CASE("bits_per_token is monotone and exact at powers of two") {
    int prev = bits_per_token(2);
    for (std::uint64_t v = 3; v < 5000; ++v) {
        const int cur = bits_per_token(v);
        CHECK(cur >= prev);
        prev = cur;
    }
    for (int p = 1; p < 62; ++p) {
        CHECK(bits_per_token(1ULL << p) == p);
        CHECK(bits_per_token((1ULL << p) + 1) == p + 1);
    }
}

TEST_CASE("pod_power reproduces the published draw figures") {
    // 5000 H100-class chips land near the ~6 MW figure.
    const double five_k = pod_power_watts(make_pod(5000, 1275));
    CHECK(five_k == doctest::Approx(6.375e6));
    CHECK(std::fabs(five_k - 6e6) / five_k <= 0.10);

    // 100k chips land near ~130 MW.
    const double hundred_k = pod_power_watts(make_pod(100000, 1275));
    CHECK(hundred_k == doctest::Approx(127.5e6));
    CHECK(std::fabs(hundred_k - 130e6) / hundred_k <= 0.10);

    CHECK(pod_power_watts(make_pod(1, 1)) == 1.0);
}

TEST_CASE("pod_power is linear in chip count") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::uint64_t> chips(1, 1 << 20);
    for (int i = 0; i < 200; ++i) {
        const std::uint64_t n = chips(rng);
        const double one = pod_power_watts(make_pod(n, 1275));
        const double twice = pod_power_watts(make_pod(2 * n, 1275));
        CHECK(twice == doctest::Approx(2 * one));
    }
}

TEST_CASE("convert reproduces the worked unit conversions") {
    const Quantity q = parse_quantity("125 KB/s");
    const Quantity mbit = convert(q, parse_unit("Mb/s"));
    CHECK(mbit.magnitude == doctest::Approx(1.0));

    CHECK(parse_quantity("812 GB").in_base() == doctest::Approx(8.12e11));
    CHECK(convert(parse_quantity("1 Mb/s"), parse_unit("B/s")).magnitude ==
          doctest::Approx(125000.0));
}

TEST_CASE("conversion round trips are exact within 1 ulp") {
    const Unit data_units[] = {parse_unit("B"), parse_unit("kB"), parse_unit("MB"),
                               parse_unit("GB"), parse_unit("TB"), parse_unit("b")};
    const Unit rate_units[] = {parse_unit("B/s"), parse_unit("KB/s"), parse_unit("Mb/s"),
                               parse_unit("Gb/s"), parse_unit("GB/s")};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> exponent(-6.0, 21.0);
    for (int i = 0; i < 2000; ++i) {
        const double magnitude = std::pow(10.0, exponent(rng));
        const Unit& a = data_units[i % 6];
        const Unit& b = data_units[(i * 7 + 1) % 6];
        const Quantity q{magnitude, a};
        const Quantity back = convert(convert(q, b), a);
        CHECK(within_one_ulp(back.magnitude, magnitude));

        const Unit& ra = rate_units[i % 5];
        const Unit& rb = rate_units[(i * 3 + 1) % 5];
        const Quantity r{magnitude, ra};
        CHECK(within_one_ulp(convert(convert(r, rb), ra).magnitude, magnitude));
    }
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(convert(parse_quantity("1 GB"), parse_unit("W")), UnitError);
    CHECK_THROWS_AS(convert(parse_quantity("1 GB"), parse_unit("GB/s")), UnitError);
    CHECK_THROWS_AS(convert(parse_quantity("1 FLOP"), parse_unit("FLOP/s")), UnitError);
    CHECK_THROWS_AS(parse_quantity("1 GB") + parse_quantity("1 s"), UnitError);
    CHECK_THROWS_AS(parse_quantity("1 W") - parse_quantity("1 B/s"), UnitError);
}

TEST_CASE("addition converts within a dimension") {
    const Quantity sum = parse_quantity("1 GB") + parse_quantity("500 MB");
    CHECK(sum.in_base() == doctest::Approx(1.5e9));
    CHECK(parse_quantity("1 Mb/s") / parse_quantity("125 KB/s") == doctest::Approx(1.0));
}

TEST_CASE("binary prefixes and malformed quantities are rejected at parse time") {
    CHECK_THROWS_AS(parse_unit("KiB"), UnitError);
    CHECK_THROWS_AS(parse_unit("MiB/s"), UnitError);
    CHECK_THROWS_AS(parse_unit("GiB"), UnitError);
    CHECK_THROWS_AS(parse_unit("parsecs"), UnitError);
    CHECK_THROWS_AS(parse_quantity("12"), UnitError);
    CHECK_THROWS_AS(parse_quantity("-3 GB"), UnitError);
    CHECK_THROWS_AS(parse_quantity("fast"), UnitError);
    CHECK(parse_quantity("48 h").in_base() == doctest::Approx(172800.0));
    CHECK(parse_quantity("400 TFLOP/s").in_base() == doctest::Approx(400e12));
}

TEST_CASE("spec invariants are enforced") {
    ModelSpec m{405e9, 16384, 128000, 16, 16, 16};
    CHECK_NOTHROW(m.validate());
    m.grad_bits = 12;
    CHECK_THROWS_AS(m.validate(), SpecError);

    PodSpec pod = make_pod(0, 1275);
    CHECK_THROWS_AS(pod.validate(), SpecError);
    pod.n_chips = 1;
    pod.inter_pod_limit = 0.0;
    CHECK_THROWS_AS(pod.validate(), SpecError);

    ChipSpec chip{100, 200, 300};  // achieved above peak
    CHECK_THROWS_AS(chip.validate(), SpecError);

    BatchSpec batch{8192, 16, 1000};  // global batch below one pod batch
    CHECK_THROWS_AS(batch.validate(), SpecError);
}
