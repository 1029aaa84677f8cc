#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace fbrate {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The 128-bit counter is split into a 64-bit block index and a 64-bit
/// stream id, so (key, stream) names an independent substream that can be
/// created anywhere without coordination. Satisfies
/// UniformRandomBitGenerator with 64-bit output.
class Philox4x32 {
public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    Philox4x32(std::uint64_t key, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
          stream_(stream) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        if (index_ == 2) {
            block_ = bijection(counter(), key_);
            ++block_index_;
            index_ = 0;
        }
        const result_type lo = block_[2 * index_];
        const result_type hi = block_[2 * index_ + 1];
        ++index_;
        return lo | (hi << 32);
    }

    /// The raw 10-round bijection.
    static constexpr Block bijection(Block ctr, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

private:
    Block counter() const noexcept {
        return {static_cast<std::uint32_t>(block_index_), static_cast<std::uint32_t>(block_index_ >> 32),
                static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    }

    Key key_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    Block block_{};
    int index_ = 2;
};

}  // namespace fbrate
