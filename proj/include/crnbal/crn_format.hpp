#ifndef CRNBAL_CRN_FORMAT_HPP
#define CRNBAL_CRN_FORMAT_HPP

#include "crnbal/kinetics.hpp"
#include "crnbal/network.hpp"

#include <string>
#include <string_view>

namespace crnbal {

struct CrnFile {
    ReactionNetwork network;
    Kinetics kinetics;
};

/// Parses the text format. Syntax problems raise ParseFailure (ParseError, UnknownSpecies,
/// MissingKineticsRow, NegativeRate) with line and column.
CrnFile parse_crn(std::string_view text);

/// Reads and parses a file; an unreadable file is a ParseError at line 0.
CrnFile load_crn(const std::string& path);

/// Text that parses back to an equal network and kinetics.
std::string render_crn(const ReactionNetwork& net, const Kinetics& kin);

}  // namespace crnbal

#endif  // CRNBAL_CRN_FORMAT_HPP
