#include "wsts/model_io.hpp"

#include <algorithm>
#include <span>
#include <sstream>

namespace wsts {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

std::uint64_t parse_nat(const Line& line, const std::string& tok) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(tok, &pos);
        if (pos != tok.size() || v == UINT64_MAX) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line.number, "expected a natural number, got '" + tok + "'");
    }
}

std::int64_t parse_int(const Line& line, const std::string& tok) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line.number, "expected an integer, got '" + tok + "'");
    }
}

std::vector<std::uint64_t> parse_nat_row(const Line& line, std::size_t from, std::size_t count) {
    if (line.tokens.size() != from + count)
        throw ParseError(line.number, "expected " + std::to_string(count) + " values");
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::size_t i = from; i < line.tokens.size(); ++i)
        out.push_back(parse_nat(line, line.tokens[i]));
    return out;
}

AcsModel parse_acs(const std::vector<Line>& lines, std::size_t& i) {
    AcsModel model;
    if (i >= lines.size() || lines[i].tokens[0] != "dim" || lines[i].tokens.size() != 2)
        throw ParseError(i < lines.size() ? lines[i].number : lines.back().number,
                         "expected 'dim k'");
    model.dimension = parse_nat(lines[i], lines[i].tokens[1]);
    if (model.dimension == 0) throw ParseError(lines[i].number, "dimension must be positive");
    ++i;

    if (i >= lines.size() || lines[i].tokens[0] != "init")
        throw ParseError(lines[i - 1].number, "expected 'init ...' after 'dim'");
    model.initial = parse_nat_row(lines[i], 1, model.dimension);
    ++i;

    while (i < lines.size()) {
        const Line& head = lines[i];
        if (head.tokens[0] != "map" || head.tokens.size() != 2)
            throw ParseError(head.number, "expected 'map NAME'");
        AffineMap f;
        f.name = head.tokens[1];
        if (model.find_map(f.name))
            throw ParseError(head.number, "duplicate map name '" + f.name + "'");
        ++i;

        if (i >= lines.size() || lines[i].tokens[0] != "guard")
            throw ParseError(head.number, "map '" + f.name + "': expected 'guard ...'");
        f.guard = parse_nat_row(lines[i], 1, model.dimension);
        ++i;

        if (i >= lines.size() || lines[i].tokens[0] != "matrix")
            throw ParseError(head.number, "map '" + f.name + "': expected 'matrix'");
        if (lines[i].tokens.size() == 2 && lines[i].tokens[1] == "identity") {
            f.matrix = NatMatrix::identity(model.dimension);
            ++i;
        } else if (lines[i].tokens.size() == 1) {
            ++i;
            std::vector<std::uint64_t> cells;
            for (std::size_t r = 0; r < model.dimension; ++r) {
                if (i >= lines.size())
                    throw ParseError(lines.back().number, "map '" + f.name + "': missing matrix row");
                auto row = parse_nat_row(lines[i], 0, model.dimension);
                cells.insert(cells.end(), row.begin(), row.end());
                ++i;
            }
            f.matrix = NatMatrix(model.dimension, std::move(cells));
        } else {
            throw ParseError(lines[i].number, "expected 'matrix identity' or bare 'matrix'");
        }

        if (i >= lines.size() || lines[i].tokens[0] != "offset")
            throw ParseError(head.number, "map '" + f.name + "': expected 'offset ...'");
        if (lines[i].tokens.size() != 1 + model.dimension)
            throw ParseError(lines[i].number, "expected " + std::to_string(model.dimension) + " values");
        for (std::size_t t = 1; t < lines[i].tokens.size(); ++t)
            f.offset.push_back(parse_int(lines[i], lines[i].tokens[t]));
        ++i;

        if (i >= lines.size() || lines[i].tokens[0] != "end" || lines[i].tokens.size() != 1)
            throw ParseError(head.number, "map '" + f.name + "': expected 'end'");
        if (!f.well_defined())
            throw ParseError(head.number,
                             "map '" + f.name + "': matrix*guard+offset has a negative coordinate");
        model.maps.push_back(std::move(f));
        ++i;
    }
    return model;
}

std::size_t find_name(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? names.size() : static_cast<std::size_t>(it - names.begin());
}

// Splits tokens on ";" separators.
std::vector<std::vector<std::string>> split_semicolons(std::span<const std::string> tokens) {
    std::vector<std::vector<std::string>> groups(1);
    for (const auto& tok : tokens) {
        if (tok == ";")
            groups.emplace_back();
        else
            groups.back().push_back(tok);
    }
    return groups;
}

FlcsModel parse_flcs(const std::vector<Line>& lines, std::size_t& i) {
    FlcsModel model;
    auto expect_list = [&](const char* keyword) {
        if (i >= lines.size() || lines[i].tokens[0] != keyword || lines[i].tokens.size() < 2)
            throw ParseError(i < lines.size() ? lines[i].number : lines.back().number,
                             std::string("expected '") + keyword + " ...'");
        std::vector<std::string> out(lines[i].tokens.begin() + 1, lines[i].tokens.end());
        ++i;
        return out;
    };

    model.controls = expect_list("controls");
    model.channels = expect_list("channels");
    auto letters = expect_list("alphabet");
    std::string alpha;
    for (const auto& l : letters) {
        if (l.size() != 1)
            throw ParseError(lines[i - 1].number, "alphabet letters must be single characters");
        alpha += l[0];
    }
    model.alphabet = LetterSet(alpha);

    for (auto* names : {&model.controls, &model.channels}) {
        for (std::size_t a = 0; a < names->size(); ++a)
            for (std::size_t b = a + 1; b < names->size(); ++b)
                if ((*names)[a] == (*names)[b])
                    throw ParseError(lines[0].number, "duplicate name '" + (*names)[a] + "'");
    }

    if (i >= lines.size() || lines[i].tokens[0] != "init")
        throw ParseError(lines[i - 1].number, "expected 'init q ; w1 ; ... ; wm'");
    {
        const Line& line = lines[i];
        auto groups = split_semicolons(std::span(line.tokens).subspan(1));
        if (groups.empty() || groups[0].size() != 1)
            throw ParseError(line.number, "expected 'init q ; w1 ; ... ; wm'");
        model.initial_control = find_name(model.controls, groups[0][0]);
        if (model.initial_control == model.controls.size())
            throw ParseError(line.number, "unknown control '" + groups[0][0] + "'");
        if (groups.size() != 1 + model.channels.size())
            throw ParseError(line.number, "expected one initial word per channel");
        for (std::size_t c = 1; c < groups.size(); ++c) {
            if (groups[c].size() != 1)
                throw ParseError(line.number, "expected one word per channel");
            std::string w = groups[c][0] == "eps" ? "" : groups[c][0];
            for (char a : w)
                if (!model.alphabet.contains(a))
                    throw ParseError(line.number, std::string("letter '") + a + "' not in alphabet");
            model.initial_words.push_back(std::move(w));
        }
        ++i;
    }

    while (i < lines.size()) {
        const Line& line = lines[i];
        // rule q -> q' : c ! a   |   rule q -> q' : c ? a
        if (line.tokens[0] != "rule" || line.tokens.size() != 8 || line.tokens[2] != "->" ||
            line.tokens[4] != ":")
            throw ParseError(line.number, "expected 'rule q -> q' : c !|? a'");
        FlcsRule rule;
        rule.name = "r" + std::to_string(model.rules.size() + 1);
        rule.source = find_name(model.controls, line.tokens[1]);
        rule.target = find_name(model.controls, line.tokens[3]);
        rule.channel = find_name(model.channels, line.tokens[5]);
        if (rule.source == model.controls.size())
            throw ParseError(line.number, "unknown control '" + line.tokens[1] + "'");
        if (rule.target == model.controls.size())
            throw ParseError(line.number, "unknown control '" + line.tokens[3] + "'");
        if (rule.channel == model.channels.size())
            throw ParseError(line.number, "unknown channel '" + line.tokens[5] + "'");
        if (line.tokens[6] == "!")
            rule.is_send = true;
        else if (line.tokens[6] == "?")
            rule.is_send = false;
        else
            throw ParseError(line.number, "expected '!' or '?'");
        if (line.tokens[7].size() != 1 || !model.alphabet.contains(line.tokens[7][0]))
            throw ParseError(line.number, "letter '" + line.tokens[7] + "' not in alphabet");
        rule.letter = line.tokens[7][0];
        model.rules.push_back(std::move(rule));
        ++i;
    }
    return model;
}

}  // namespace

Model parse_model(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty model");
    const Line& head = lines[0];
    if (head.tokens.size() != 2 || head.tokens[0] != "system")
        throw ParseError(head.number, "expected 'system acs' or 'system flcs'");
    std::size_t i = 1;
    if (head.tokens[1] == "acs") {
        auto model = parse_acs(lines, i);
        return model;
    }
    if (head.tokens[1] == "flcs") {
        auto model = parse_flcs(lines, i);
        return model;
    }
    throw ParseError(head.number, "unknown system kind '" + head.tokens[1] + "'");
}

namespace {

std::string render_acs(const AcsModel& model) {
    std::ostringstream out;
    out << "system acs\n";
    out << "dim " << model.dimension << "\n";
    out << "init";
    for (auto v : model.initial) out << ' ' << v;
    out << "\n";
    for (const auto& f : model.maps) {
        out << "map " << f.name << "\n";
        out << "guard";
        for (auto v : f.guard) out << ' ' << v;
        out << "\n";
        if (f.matrix.is_identity()) {
            out << "matrix identity\n";
        } else {
            out << "matrix\n";
            for (std::size_t r = 0; r < model.dimension; ++r) {
                for (std::size_t c = 0; c < model.dimension; ++c)
                    out << (c ? " " : "") << f.matrix.at(r, c);
                out << "\n";
            }
        }
        out << "offset";
        for (auto v : f.offset) out << ' ' << v;
        out << "\n";
        out << "end\n";
    }
    return out.str();
}

std::string render_flcs(const FlcsModel& model) {
    std::ostringstream out;
    out << "system flcs\n";
    out << "controls";
    for (const auto& q : model.controls) out << ' ' << q;
    out << "\nchannels";
    for (const auto& c : model.channels) out << ' ' << c;
    out << "\nalphabet";
    for (char a : model.alphabet.chars()) out << ' ' << a;
    out << "\ninit " << model.controls[model.initial_control];
    for (const auto& w : model.initial_words) out << " ; " << (w.empty() ? "eps" : w);
    out << "\n";
    for (const auto& r : model.rules) {
        out << "rule " << model.controls[r.source] << " -> " << model.controls[r.target] << " : "
            << model.channels[r.channel] << ' ' << (r.is_send ? '!' : '?') << ' ' << r.letter
            << "\n";
    }
    return out.str();
}

}  // namespace

std::string render_model(const Model& model) {
    if (const auto* acs = std::get_if<AcsModel>(&model)) return render_acs(*acs);
    return render_flcs(std::get<FlcsModel>(model));
}

std::vector<std::uint64_t> parse_acs_concrete(const std::string& text, std::size_t dim) {
    std::istringstream in(text);
    std::vector<std::uint64_t> out;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t pos = 0;
            std::uint64_t v = std::stoull(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("expected a concrete state of naturals, got '" + tok + "'");
        }
    }
    if (out.size() != dim)
        throw std::invalid_argument("expected " + std::to_string(dim) + " coordinates");
    return out;
}

FlcsConcrete parse_flcs_concrete(const std::string& text, const FlcsModel& model) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    auto groups = split_semicolons(tokens);
    if (groups.empty() || groups[0].size() != 1)
        throw std::invalid_argument("expected 'q ; w1 ; ... ; wm'");
    FlcsConcrete out;
    out.control = find_name(model.controls, groups[0][0]);
    if (out.control == model.controls.size())
        throw std::invalid_argument("unknown control '" + groups[0][0] + "'");
    if (groups.size() != 1 + model.channels.size())
        throw std::invalid_argument("expected one word per channel");
    for (std::size_t c = 1; c < groups.size(); ++c) {
        if (groups[c].size() != 1) throw std::invalid_argument("expected one word per channel");
        std::string w = groups[c][0] == "eps" ? "" : groups[c][0];
        for (char a : w)
            if (!model.alphabet.contains(a))
                throw std::invalid_argument(std::string("letter '") + a + "' not in alphabet");
        out.words.push_back(std::move(w));
    }
    return out;
}

}  // namespace wsts
