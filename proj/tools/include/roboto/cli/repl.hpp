#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "roboto/engine/state.hpp"

namespace roboto::cli {

/// Text-mode tracker. Reads commands from `in` until `quit` or end of
/// input:
///
///   next            execute the current statement, asking for a decision
///                   or an answer on the following line when one is needed
///   back            undo the last step or edit
///   vars            list visible variables
///   set NAME VALUE  edit a variable; commas make a list
///   quit
///
/// Arguments missing from `args` are asked for first. Returns 0.
int runInteractive(std::shared_ptr<const syntax::StrategyDoc> doc, const std::string& root, engine::Bindings args,
                   std::istream& in, std::ostream& out);

}  // namespace roboto::cli
