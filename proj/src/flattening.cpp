#include "wsts/flattening.hpp"

#include <sstream>

namespace wsts {

std::string render_rlre(const std::vector<std::vector<std::size_t>>& words,
                        const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t w = 0; w < words.size(); ++w) {
        if (w) out += " ; ";
        for (std::size_t i = 0; i < words[w].size(); ++i) {
            if (i) out += ' ';
            out += names[words[w][i]];
        }
    }
    return out;
}

std::optional<std::vector<std::vector<std::size_t>>> parse_rlre(
    const std::string& text, const std::vector<std::string>& names) {
    std::istringstream in(text);
    std::vector<std::vector<std::size_t>> words(1);
    std::string tok;
    while (in >> tok) {
        if (tok == ";") {
            if (words.back().empty()) return std::nullopt;
            words.emplace_back();
            continue;
        }
        std::size_t idx = names.size();
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == tok) {
                idx = i;
                break;
            }
        if (idx == names.size()) return std::nullopt;
        words.back().push_back(idx);
    }
    if (words.back().empty()) words.pop_back();
    for (const auto& w : words)
        if (w.empty()) return std::nullopt;
    return words;
}

}  // namespace wsts
