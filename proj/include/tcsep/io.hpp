#pragma once

// JSON exchange formats. Integers are written as decimal strings; readers accept
// strings or JSON numbers.

#include <string>

#include "json.hpp"
#include "tcsep/builtin.hpp"

namespace tcsep {

using Json = nlohmann::json;

Int int_from_json(const Json& j);
Json int_to_json(const Int& v);
Json vec_to_json(const IntVec& v);
IntVec vec_from_json(const Json& j);

// {"basis": [...], "weights": {name: w}, "commutators": {"b,a": {name: e}}, "class": c}
// where the entry "b,a" (b after a in the basis) gives [b,a] = b a b^-1 a^-1.
Json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);
// A presentation object, or one of the names "heisenberg", "dim5", "Z<k>".
GroupPtr group_from_json(const Json& j);

// Elements: an exponent array, or an object {generator: exponent} with omitted entries zero.
Json element_to_json(const Element& g);
Element element_from_json(const Group& G, const Json& j);

// Homomorphisms: {generator: element} for every domain generator.
Json hom_to_json(const GroupHom& f);
GroupHom hom_from_json(const GroupPtr& domain, const GroupPtr& codomain, const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace tcsep
