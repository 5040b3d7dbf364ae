#include "holeforge/prelude.hpp"

#include <cstdio>
#include <cstdlib>
#include <variant>

namespace holeforge {

const std::string& preludeText() {
  static const std::string text = R"(-- built-in prelude
data Bool = True | False
data Int
data [a] = [] | (:) a [a]
data Maybe a = Nothing | Just a
data Exp a where {
  Lit :: a -> Exp a;
  Plus :: (a ~ Int) => Exp Int -> Exp Int -> Exp a;
  Eq :: (a ~ Bool) => Exp Int -> Exp Int -> Exp a;
  If :: Exp Bool -> Exp a -> Exp a -> Exp a
}
)";
  return text;
}

const SourceFile& preludeFile() {
  static const SourceFile file = [] {
    ParseResult r = parseSourceFile(preludeText(), "<prelude>");
    if (auto* d = std::get_if<Diagnostic>(&r)) {
      std::fprintf(stderr, "broken embedded prelude: %s\n", d->render().c_str());
      std::abort();
    }
    return std::get<SourceFile>(std::move(r));
  }();
  return file;
}

}  // namespace holeforge
