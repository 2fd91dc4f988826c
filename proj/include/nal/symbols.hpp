#ifndef NAL_SYMBOLS_HPP
#define NAL_SYMBOLS_HPP

#include <string>
#include <vector>

namespace nal {

/// Process-wide interning table for variable names.  Id 0 is always the
/// degeneration variable t.  Thread-safe.
namespace symbols {

int intern(const std::string& name);
const std::string& name(int id);
bool lookup(const std::string& name, int* id);

inline int t() { return 0; }

/// Fresh internal variable ("#x12") that the catalog grammar cannot produce;
/// used for generic coordinate indeterminates.
int fresh(const std::string& hint);

} // namespace symbols

} // namespace nal

#endif
