#include "lexshift/util.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <system_error>
#include <thread>
#include <vector>

namespace lexshift {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    }
    return v;
}

std::string format_percent_value(double fraction) {
    double pct = std::round(fraction * 1000.0) / 10.0;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.1f", pct);
    return buf;
}

std::string format_percent(double fraction) {
    return format_percent_value(fraction) + "%";
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        }
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot open: " + path.string());
    }
    std::string out((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return out;
}

void parallel_chunks(std::size_t n, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        fn(0, n);
        return;
    }
    unsigned w = std::min<std::size_t>(workers, n);
    std::vector<std::thread> threads;
    threads.reserve(w);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < w; ++t) {
        std::size_t begin = n * t / w;
        std::size_t end = n * (t + 1) / w;
        threads.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lexshift
