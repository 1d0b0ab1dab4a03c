#ifndef LEXSHIFT_UTIL_HPP_
#define LEXSHIFT_UTIL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lexshift {

// Inclusive year interval.
struct YearRange {
    int first = 0;
    int last = 0;

    bool contains(int year) const { return year >= first && year <= last; }
    bool empty() const { return last < first; }

    void require_valid(const char* what = "year range") const {
        if (empty()) {
            throw std::invalid_argument(std::string(what) + " is inverted: [" +
                                        std::to_string(first) + ", " + std::to_string(last) + "]");
        }
    }
};

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// Parses a double; throws on garbage or trailing characters.
double parse_double(std::string_view s);

// One-decimal percent display with halves rounded away from zero:
// 0.2615 -> "26.2%", 0.139007 -> "13.9%".
std::string format_percent(double fraction);

// Same rounding, without the sign: "26.2".
std::string format_percent_value(double fraction);

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Writes the whole file via a temp path + rename, so failures never leave a
// partially-written file at `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// Runs fn(begin, end) over a static partition of [0, n) on `workers` threads.
// Callers write into caller-owned, index-addressed slots, so results do not
// depend on scheduling. The first exception is rethrown after all threads join.
void parallel_chunks(std::size_t n, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace lexshift

#endif  // LEXSHIFT_UTIL_HPP_
