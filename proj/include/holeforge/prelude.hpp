// The built-in prelude: Bool, opaque Int, lists, Maybe, and the Exp GADT.
// Overridable per run with --prelude PATH or the HOLEFORGE_PRELUDE variable.
#pragma once

#include <string>

#include "holeforge/parse.hpp"

namespace holeforge {

const std::string& preludeText();

// The embedded prelude, parsed once. Aborts if the embedded text is broken,
// which only a bad build can cause.
const SourceFile& preludeFile();

}  // namespace holeforge
