#pragma once

// Text format for models. One model per file; '#' starts a comment.
//
//   system acs          |  system flcs
//   dim k               |  controls q0 q1 ...
//   init n1 ... nk      |  channels c ...
//   map NAME            |  alphabet a b ...
//   guard n1 ... nk     |  init q ; w1 ; ... ; wm   ("eps" for the empty word)
//   matrix identity     |  rule q -> q' : c ! a     (send)
//     (or k rows)       |  rule q -> q' : c ? a     (receive)
//   offset z1 ... zk    |
//   end                 |

#include <stdexcept>
#include <string>
#include <variant>

#include "wsts/acs.hpp"
#include "wsts/flcs.hpp"

namespace wsts {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
    std::size_t line;
};

using Model = std::variant<AcsModel, FlcsModel>;

Model parse_model(const std::string& text);
std::string render_model(const Model& model);

// Concrete-state syntax used by query flags: "1 0 2 0" for counters,
// "q ; ab ; eps" for channel systems.
std::vector<std::uint64_t> parse_acs_concrete(const std::string& text, std::size_t dim);
FlcsConcrete parse_flcs_concrete(const std::string& text, const FlcsModel& model);

}  // namespace wsts
