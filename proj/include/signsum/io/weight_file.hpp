#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "signsum/distribution/weights.hpp"
#include "signsum/errors.hpp"

namespace signsum::io {

/// One weight per line ("p/q", a finite decimal, "sqrt(p/q)", "-sqrt(p/q)").
/// Blank lines and lines starting with '#' are skipped.
inline weight_vector parse_weight_text(std::string_view text) {
    std::vector<real_value> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        line = detail::trim(line);
        if (line.empty() || line.front() == '#') continue;
        try {
            out.push_back(real_value::parse(line));
        } catch (const parse_error& e) {
            throw parse_error(e.what(), line_no);
        } catch (const std::domain_error& e) {
            throw parse_error(e.what(), line_no);
        }
    }
    return weight_vector(std::move(out));
}

inline weight_vector read_weight_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open weight file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_weight_text(buf.str());
}

}  // namespace signsum::io
