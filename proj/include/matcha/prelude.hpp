#pragma once

#include <string>
#include <vector>

#include "matcha/value.hpp"

namespace matcha {

struct PreludeSection {
  std::string name;
  std::string source;
};

// The standard library, written in the object language. Sections are in
// dependency order; loading a prefix of them is always well defined.
const std::vector<PreludeSection>& prelude_sections();

// Loads every section into env. Errors mention the failing section.
void load_prelude(const EnvPtr& env);

// Loads only the named sections (in library order, ignoring the order given).
void load_prelude_sections(const EnvPtr& env, const std::vector<std::string>& names);

}  // namespace matcha
