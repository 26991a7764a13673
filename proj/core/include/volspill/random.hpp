#pragma once

#include <cstdint>
#include <random>

namespace volspill {

/// Seeded standard-normal generator. Box-Muller on mt19937_64 so the stream
/// does not depend on the standard library's distribution implementation.
class NormalRng {
public:
    explicit NormalRng(std::uint64_t seed) : engine_(seed) {}

    double operator()();
    double uniform();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace volspill
