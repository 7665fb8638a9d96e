#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace motifscan {

/// Splits a line on commas. No quoting support; neuron and type names in the
/// supported datasets never contain commas. Trailing CR (from CRLF input) is
/// stripped from the last field.
std::vector<std::string_view> split_csv(std::string_view line);

/// Splits on a single-character delimiter; empty fields are preserved.
std::vector<std::string_view> split_on(std::string_view text, char delim);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

/// Parses a non-negative integer field. Throws std::runtime_error with the
/// offending text on failure.
std::uint64_t parse_u64(std::string_view field, std::string_view what);
double parse_double(std::string_view field, std::string_view what);

/// 64-bit FNV-1a over a byte sequence.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull);

/// FNV-1a of a whole file, as "fnv1a:<16 hex digits>". Throws if unreadable.
std::string hash_file(const std::filesystem::path& path);

/// Writes content to path atomically (temp file in the same directory, then
/// rename). Creates parent directories as needed.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// SplitMix64: the counter-based generator used wherever sampling must be
/// reproducible across implementations (documented in the README).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, bound) by rejection, bias-free. bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t u = next();
            if (u >= threshold) return u % bound;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace motifscan
