#include "doctest.h"

#include <vector>

#include "oracles.hpp"
#include "wsts/word_product.hpp"

using namespace wsts;
using oracles::ProductNfa;

namespace {

WordProduct wp(const std::string& text) {
    auto p = WordProduct::parse(text);
    REQUIRE(p);
    return *p;
}

// All products with at most `max_atoms` atoms over {a, b}, normalized.
std::vector<WordProduct> small_products(std::size_t max_atoms) {
    std::vector<Atom> alphabet_atoms{Atom::single('a'), Atom::single('b'),
                                     Atom::star(LetterSet("a")), Atom::star(LetterSet("b")),
                                     Atom::star(LetterSet("ab"))};
    std::vector<std::vector<Atom>> seqs{{}};
    std::vector<WordProduct> out{WordProduct()};
    for (std::size_t len = 1; len <= max_atoms; ++len) {
        std::vector<std::vector<Atom>> next;
        for (const auto& seq : seqs) {
            if (seq.size() != len - 1) continue;
            for (const auto& a : alphabet_atoms) {
                auto ext = seq;
                ext.push_back(a);
                out.push_back(WordProduct::normalize(ext));
                next.push_back(std::move(ext));
            }
        }
        for (auto& s : next) seqs.push_back(std::move(s));
    }
    return out;
}

std::vector<std::string> words_up_to(std::size_t len, const std::string& alphabet) {
    std::vector<std::string> out{""};
    std::size_t begin = 0;
    for (std::size_t l = 1; l <= len; ++l) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (char c : alphabet) out.push_back(out[i] + c);
        begin = end;
    }
    return out;
}

}  // namespace

TEST_CASE("normalization merges absorbed atoms") {
    CHECK(WordProduct::normalize({Atom::single('a'), Atom::star(LetterSet("a"))}) == wp("{a}*"));
    CHECK(WordProduct::normalize({Atom::star(LetterSet("a")), Atom::star(LetterSet("ab"))}) ==
          wp("{a,b}*"));
    CHECK(WordProduct::normalize({Atom::single('a'), Atom::single('b')}) == wp("a?.b?"));
}

TEST_CASE("normalization preserves the denoted language") {
    // every raw atom sequence of length <= 3 denotes the same language as
    // its normal form, per the exact automaton oracle
    std::vector<Atom> atoms{Atom::single('a'), Atom::single('b'), Atom::star(LetterSet("a")),
                            Atom::star(LetterSet("b")), Atom::star(LetterSet("ab"))};
    std::vector<std::vector<Atom>> seqs{{}};
    for (std::size_t l = 0; l < 3; ++l) {
        std::size_t end = seqs.size();
        for (std::size_t i = 0; i < end; ++i) {
            if (seqs[i].size() != l) continue;
            for (const auto& a : atoms) {
                auto ext = seqs[i];
                ext.push_back(a);
                seqs.push_back(std::move(ext));
            }
        }
    }
    for (const auto& seq : seqs) {
        ProductNfa raw_nfa(seq);
        ProductNfa norm_nfa(WordProduct::normalize(seq));
        CHECK(ProductNfa::included(raw_nfa, norm_nfa, "ab"));
        CHECK(ProductNfa::included(norm_nfa, raw_nfa, "ab"));
    }
}

TEST_CASE("inclusion examples") {
    CHECK(wp_leq(wp("a?"), wp("{a}*")));
    CHECK(wp_leq(wp("{a}*.b?"), wp("{a,b}*")));
    CHECK_FALSE(wp_leq(wp("{a,b}*"), wp("{a}*.{b}*")));
    // the oracle exhibits the separating word
    CHECK(ProductNfa(wp("{a,b}*")).member("bab"));
    CHECK_FALSE(ProductNfa(wp("{a}*.{b}*")).member("bab"));
}

TEST_CASE("inclusion agrees with the exact automaton oracle") {
    auto products = small_products(2);
    for (const auto& p : products) {
        ProductNfa np(p);
        for (const auto& q : products) {
            ProductNfa nq(q);
            bool oracle = ProductNfa::included(np, nq, "ab");
            CHECK_MESSAGE(wp_leq(p, q) == oracle,
                          p.render() << " vs " << q.render() << " oracle=" << oracle);
        }
    }
}

TEST_CASE("normal forms are unique per denotation") {
    auto products = small_products(3);
    for (std::size_t i = 0; i < products.size(); ++i) {
        for (std::size_t j = i + 1; j < products.size(); ++j) {
            if (products[i] == products[j]) continue;
            ProductNfa a(products[i]), b(products[j]);
            bool equal_lang =
                ProductNfa::included(a, b, "ab") && ProductNfa::included(b, a, "ab");
            CHECK_MESSAGE(!equal_lang, products[i].render() << " == " << products[j].render());
        }
    }
}

TEST_CASE("word membership") {
    CHECK(contains_word("aab", wp("{a}*.b?")));
    CHECK(contains_word("", wp("a?.{b}*")));
    CHECK(contains_word("", WordProduct()));
    CHECK_FALSE(contains_word("ba", wp("{a}*.b?")));
    // exhaustive agreement with the oracle on all words up to length 6
    for (const auto& p : small_products(3)) {
        ProductNfa nfa(p);
        for (const auto& w : words_up_to(6, "ab")) CHECK(contains_word(w, p) == nfa.member(w));
    }
}

TEST_CASE("embedding a word yields exactly its subwords") {
    CHECK(embed_word("ab") == wp("a?.b?"));
    CHECK(embed_word("") == WordProduct());
    CHECK(embed_word("aa") == wp("a?.a?"));
    for (const auto& v : words_up_to(5, "ab")) {
        auto p = embed_word(v);
        for (const auto& w : words_up_to(5, "ab"))
            CHECK(contains_word(w, p) == oracles::is_subword(w, v));
    }
}

TEST_CASE("send appends an optional letter") {
    CHECK(sober_send('a', WordProduct()) == wp("a?"));
    CHECK(sober_send('a', wp("{a}*")) == wp("{a}*"));
    CHECK(sober_send('b', wp("a?")) == wp("a?.b?"));
}

TEST_CASE("receive follows the head-case equations") {
    // recv a (a? P) = P
    CHECK(sober_recv('a', wp("a?.b?")) == wp("b?"));
    // recv a (b? P) = recv a (P)
    CHECK(sober_recv('a', wp("b?.a?")) == WordProduct());
    // recv a (A* P) = A* P when a in A
    CHECK(sober_recv('a', wp("{a,b}*.c?")) == wp("{a,b}*.c?"));
    // recv a (A* P) = recv a (P) when a not in A
    CHECK(sober_recv('a', wp("{c}*.a?.b?")) == wp("b?"));
    // chained: skip b? and {c}* before the first a?
    CHECK(sober_recv('a', wp("b?.{c}*.a?.b?")) == wp("b?"));
    CHECK_FALSE(sober_recv('a', WordProduct()));
    CHECK_FALSE(sober_recv('a', wp("b?.{c}*")));
}

TEST_CASE("receive is sound for the concrete semantics") {
    for (const auto& p : small_products(3)) {
        auto recv = sober_recv('a', p);
        ProductNfa nfa(p);
        for (const auto& w : words_up_to(6, "ab")) {
            if (!nfa.member(w)) continue;
            auto pos = w.find('a');
            if (pos == std::string::npos) continue;  // concrete recv undefined
            REQUIRE_MESSAGE(recv.has_value(), p.render());
            std::string rest = w.substr(pos + 1);
            CHECK_MESSAGE(contains_word(rest, *recv), p.render() << " recv a on " << w);
        }
    }
}

TEST_CASE("send and receive are monotonic") {
    auto products = small_products(2);
    for (const auto& p : products) {
        for (const auto& q : products) {
            if (!wp_leq(p, q)) continue;
            CHECK(wp_leq(sober_send('a', p), sober_send('a', q)));
            auto rp = sober_recv('a', p);
            auto rq = sober_recv('a', q);
            if (rp) {
                REQUIRE(rq);  // domains are upward closed
                CHECK(wp_leq(*rp, *rq));
            }
        }
    }
}

TEST_CASE("parsing and rendering round-trip") {
    for (const auto& text : {"eps", "a?", "{a}*", "a?.{a,b}*.c?", "{b,c}*.{a}*"}) {
        auto p = WordProduct::parse(text);
        REQUIRE(p);
        auto again = WordProduct::parse(p->render());
        REQUIRE(again);
        CHECK(*again == *p);
    }
    CHECK_FALSE(WordProduct::parse(""));
    CHECK_FALSE(WordProduct::parse("a"));
    CHECK_FALSE(WordProduct::parse("{}*"));
    CHECK_FALSE(WordProduct::parse("a?b?"));
}

TEST_CASE("has_star detects infinite denotations") {
    CHECK_FALSE(wp("a?.b?").has_star());
    CHECK(wp("{a}*").has_star());
    CHECK_FALSE(WordProduct().has_star());
}
