#include "wsts/word_product.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace wsts {

LetterSet::LetterSet(std::string letters) : chars_(std::move(letters)) {
    std::sort(chars_.begin(), chars_.end());
    chars_.erase(std::unique(chars_.begin(), chars_.end()), chars_.end());
}

bool LetterSet::contains(char a) const {
    return std::binary_search(chars_.begin(), chars_.end(), a);
}

bool LetterSet::subset_of(const LetterSet& other) const {
    return std::includes(other.chars_.begin(), other.chars_.end(), chars_.begin(), chars_.end());
}

Atom Atom::star(LetterSet s) {
    if (s.empty()) throw std::invalid_argument("Atom::star: empty letter set");
    return Atom{Kind::star, 0, std::move(s)};
}

bool Atom::total_less(const Atom& other) const {
    if (kind != other.kind) return kind == Kind::single;
    if (kind == Kind::single) return letter < other.letter;
    return letters < other.letters;
}

std::string Atom::render() const {
    if (kind == Kind::single) return std::string(1, letter) + "?";
    std::string out = "{";
    const std::string& cs = letters.chars();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) out += ',';
        out += cs[i];
    }
    out += "}*";
    return out;
}

WordProduct WordProduct::normalize(std::vector<Atom> atoms) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
            const Atom& l = atoms[i];
            const Atom& r = atoms[i + 1];
            std::optional<Atom> merged;
            if (l.is_star() && r.is_star()) {
                if (l.letters.subset_of(r.letters))
                    merged = r;
                else if (r.letters.subset_of(l.letters))
                    merged = l;
            } else if (!l.is_star() && r.is_star() && r.letters.contains(l.letter)) {
                merged = r;
            } else if (l.is_star() && !r.is_star() && l.letters.contains(r.letter)) {
                merged = l;
            }
            if (merged) {
                atoms[i] = *merged;
                atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                changed = true;
                break;
            }
        }
    }
    WordProduct p;
    p.atoms_ = std::move(atoms);
    return p;
}

bool WordProduct::has_star() const {
    for (const Atom& a : atoms_)
        if (a.is_star()) return true;
    return false;
}

bool WordProduct::total_less(const WordProduct& other) const {
    const auto& xs = atoms_;
    const auto& ys = other.atoms_;
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (xs[i] == ys[i]) continue;
        return xs[i].total_less(ys[i]);
    }
    return xs.size() < ys.size();
}

std::string WordProduct::render() const {
    if (atoms_.empty()) return "eps";
    std::string out;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) out += '.';
        out += atoms_[i].render();
    }
    return out;
}

std::optional<WordProduct> WordProduct::parse(const std::string& text) {
    if (text == "eps") return WordProduct();
    if (text.empty()) return std::nullopt;
    std::vector<Atom> atoms;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!atoms.empty()) {
            if (text[i] != '.') return std::nullopt;
            ++i;
        }
        if (i >= text.size()) return std::nullopt;
        if (text[i] == '{') {
            std::string letters;
            ++i;
            while (i < text.size() && text[i] != '}') {
                if (text[i] == ',') {
                    ++i;
                    continue;
                }
                letters += text[i];
                ++i;
            }
            if (i + 1 >= text.size() || text[i] != '}' || text[i + 1] != '*') return std::nullopt;
            if (letters.empty()) return std::nullopt;
            i += 2;
            atoms.push_back(Atom::star(LetterSet(letters)));
        } else {
            if (i + 1 >= text.size() || text[i + 1] != '?') return std::nullopt;
            atoms.push_back(Atom::single(text[i]));
            i += 2;
        }
    }
    return normalize(std::move(atoms));
}

// Head-case entailment over suffixes, tabulated to stay linear-ish on the
// long products the acceleration fallback produces:
//   eps <= Q               always
//   e P <= eps             never
//   a? P <= b? Q           (a = b and P <= Q) or a? P <= Q
//   a? P <= B* Q           P <= B* Q if a in B, else a? P <= Q
//   A* P <= b? Q           A* P <= Q
//   A* P <= B* Q           P <= B* Q if A subset of B, else A* P <= Q
bool wp_leq(const WordProduct& p, const WordProduct& q) {
    const auto& ps = p.atoms();
    const auto& qs = q.atoms();
    const std::size_t np = ps.size(), nq = qs.size();
    std::vector<std::uint8_t> dp((np + 1) * (nq + 1), 0);
    auto cell = [&](std::size_t i, std::size_t j) -> std::uint8_t& { return dp[i * (nq + 1) + j]; };
    for (std::size_t j = 0; j <= nq; ++j) cell(np, j) = 1;
    for (std::size_t i = np; i-- > 0;) {
        for (std::size_t j = nq; j-- > 0;) {
            const Atom& x = ps[i];
            const Atom& y = qs[j];
            bool r;
            if (!x.is_star() && !y.is_star())
                r = (x.letter == y.letter && cell(i + 1, j + 1)) || cell(i, j + 1);
            else if (!x.is_star() && y.is_star())
                r = y.letters.contains(x.letter) ? cell(i + 1, j) : cell(i, j + 1);
            else if (x.is_star() && !y.is_star())
                r = cell(i, j + 1);
            else
                r = x.letters.subset_of(y.letters) ? cell(i + 1, j) : cell(i, j + 1);
            cell(i, j) = r ? 1 : 0;
        }
    }
    return cell(0, 0) != 0;
}

bool contains_word(const std::string& w, const WordProduct& p) {
    const auto& atoms = p.atoms();
    std::size_t pos = 0;
    for (char c : w) {
        bool matched = false;
        while (pos < atoms.size()) {
            const Atom& a = atoms[pos];
            if (a.is_star()) {
                if (a.letters.contains(c)) {
                    matched = true;  // stay on the star
                    break;
                }
                ++pos;
            } else {
                if (a.letter == c) {
                    matched = true;
                    ++pos;
                    break;
                }
                ++pos;  // skip the unused optional letter
            }
        }
        if (!matched) return false;
    }
    return true;
}

WordProduct embed_word(const std::string& w) {
    std::vector<Atom> atoms;
    atoms.reserve(w.size());
    for (char c : w) atoms.push_back(Atom::single(c));
    return WordProduct::normalize(std::move(atoms));
}

WordProduct sober_send(char a, const WordProduct& p) {
    std::vector<Atom> atoms = p.atoms();
    atoms.push_back(Atom::single(a));
    return WordProduct::normalize(std::move(atoms));
}

std::optional<WordProduct> sober_recv(char a, const WordProduct& p) {
    const auto& atoms = p.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom& head = atoms[i];
        if (head.is_star()) {
            if (head.letters.contains(a)) {
                // recv a (A* P) = A* P when a in A
                std::vector<Atom> rest(atoms.begin() + static_cast<std::ptrdiff_t>(i), atoms.end());
                return WordProduct::normalize(std::move(rest));
            }
            continue;  // recv a (A* P) = recv a (P) otherwise
        }
        if (head.letter == a) {
            // recv a (a? P) = P
            std::vector<Atom> rest(atoms.begin() + static_cast<std::ptrdiff_t>(i) + 1, atoms.end());
            return WordProduct::normalize(std::move(rest));
        }
        // recv a (b? P) = recv a (P) for b != a
    }
    return std::nullopt;
}

}  // namespace wsts
