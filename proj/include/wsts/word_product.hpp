#pragma once

// Word products: the completion of Sigma* under the subword ordering.
// A product is a sequence of atoms "a?" (one optional letter) and "A*"
// (any word over a nonempty letter set); it denotes a downward-closed
// language. Products are kept in a normal form so that equal denotations
// have equal representations.

#include <optional>
#include <string>
#include <vector>

namespace wsts {

// Sorted, duplicate-free set of single-character letters.
class LetterSet {
public:
    LetterSet() = default;
    explicit LetterSet(std::string letters);

    bool empty() const { return chars_.empty(); }
    std::size_t size() const { return chars_.size(); }
    bool contains(char a) const;
    bool subset_of(const LetterSet& other) const;
    const std::string& chars() const { return chars_; }

    bool operator==(const LetterSet&) const = default;
    bool operator<(const LetterSet& other) const { return chars_ < other.chars_; }

private:
    std::string chars_;  // sorted, unique
};

struct Atom {
    enum class Kind { single, star };

    Kind kind = Kind::single;
    char letter = 0;     // single
    LetterSet letters;   // star, nonempty

    static Atom single(char a) { return Atom{Kind::single, a, {}}; }
    static Atom star(LetterSet s);

    bool is_star() const { return kind == Kind::star; }
    bool operator==(const Atom&) const = default;
    bool total_less(const Atom& other) const;

    std::string render() const;
};

class WordProduct {
public:
    WordProduct() = default;  // the empty product, denoting {epsilon}

    // Applies the rewrite rules to a fixpoint:
    //   A* B*  ->  B*   if A is a subset of B,   ->  A*  if B subset of A
    //   a? A*  ->  A*   and   A* a?  ->  A*      when a is in A
    static WordProduct normalize(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    bool has_star() const;  // equivalently, the denoted language is infinite

    bool operator==(const WordProduct&) const = default;
    bool total_less(const WordProduct& other) const;

    // "a?.{a,b}*" with atoms joined by '.'; the empty product is "eps".
    std::string render() const;
    static std::optional<WordProduct> parse(const std::string& text);

private:
    std::vector<Atom> atoms_;  // normal form
};

// Language inclusion on downward closures, decided by recursive entailment
// over the heads of both products.
bool wp_leq(const WordProduct& p, const WordProduct& q);

// w in the denoted language, by greedy left-to-right matching.
bool contains_word(const std::string& w, const WordProduct& p);

// The image of a concrete word: the product of its letters as optional
// atoms, denoting exactly the subwords of w.
WordProduct embed_word(const std::string& w);

// Completed channel operations.  Sending a letter is total; receiving is
// defined only when some atom can supply the letter.
WordProduct sober_send(char a, const WordProduct& p);
std::optional<WordProduct> sober_recv(char a, const WordProduct& p);

}  // namespace wsts
