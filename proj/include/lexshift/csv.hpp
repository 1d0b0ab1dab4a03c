#ifndef LEXSHIFT_CSV_HPP_
#define LEXSHIFT_CSV_HPP_

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lexshift {

// Quotes a field when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

// Splits one CSV record (no embedded newlines) honoring quoted fields.
std::vector<std::string> csv_split(std::string_view line);

// Minimal row-oriented CSV builder with deterministic output.
class CsvBuilder {
public:
    explicit CsvBuilder(std::string_view header) { os_ << header << '\n'; }

    void raw_line(std::string_view line) { os_ << line << '\n'; }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) os_ << ',';
            os_ << csv_escape(fields[i]);
        }
        os_ << '\n';
    }

    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

}  // namespace lexshift

#endif  // LEXSHIFT_CSV_HPP_
