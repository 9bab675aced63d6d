#include "tcsep/io.hpp"

#include <fstream>

namespace tcsep {

Int int_from_json(const Json& j) {
  if (j.is_string()) return parse_int(j.get<std::string>());
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

Json int_to_json(const Int& v) { return v.get_str(); }

Json vec_to_json(const IntVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

IntVec vec_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array, got " + j.dump());
  IntVec v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

Json presentation_to_json(const Presentation& p) {
  Json j;
  j["basis"] = p.names;
  Json w = Json::object();
  for (std::size_t i = 0; i < p.hirsch(); ++i) w[p.names[i]] = p.weight[i];
  j["weights"] = w;
  Json c = Json::object();
  for (std::size_t b = 0; b < p.hirsch(); ++b)
    for (std::size_t a = 0; a < b; ++a) {
      Element rel = p.commutator_relation(b, a);
      if (is_zero(rel)) continue;
      Json word = Json::object();
      for (std::size_t k = 0; k < rel.size(); ++k)
        if (rel[k] != 0) word[p.names[k]] = int_to_json(rel[k]);
      c[p.names[b] + "," + p.names[a]] = word;
    }
  j["commutators"] = c;
  j["class"] = p.nilpotency_class();
  return j;
}

Presentation presentation_from_json(const Json& j) {
  Presentation p;
  p.names = j.at("basis").get<std::vector<std::string>>();
  const Json& w = j.at("weights");
  for (const auto& n : p.names) {
    if (!w.contains(n)) throw std::invalid_argument("no weight for generator '" + n + "'");
    p.weight.push_back(static_cast<int>(int_from_json(w.at(n)).get_si()));
  }
  p.comm.resize(p.hirsch());
  if (j.contains("commutators")) {
    for (const auto& [key, word] : j.at("commutators").items()) {
      auto comma = key.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("commutator key '" + key + "' needs a comma");
      std::size_t b = p.index_of(key.substr(0, comma)), a = p.index_of(key.substr(comma + 1));
      Element rel = zeros(p.hirsch());
      for (const auto& [name, e] : word.items()) rel[p.index_of(name)] = int_from_json(e);
      if (b <= a)
        throw std::invalid_argument("commutator key '" + key + "' must name the later generator first");
      p.set_commutator(b, a, rel);
    }
  }
  if (j.contains("class") && int_from_json(j.at("class")) != p.nilpotency_class())
    throw std::invalid_argument("declared class does not match the maximum weight");
  return p;
}

GroupPtr group_from_json(const Json& j) {
  if (j.is_object()) return std::make_shared<const Group>(presentation_from_json(j));
  if (!j.is_string()) throw std::invalid_argument("expected a group name or presentation, got " + j.dump());
  std::string name = j.get<std::string>();
  if (name == "heisenberg" || name == "H3") return heisenberg();
  if (name == "dim5") return dim5_group();
  if (name.size() > 1 && name[0] == 'Z' && name.find_first_not_of("0123456789", 1) == std::string::npos)
    return free_abelian(std::stoul(name.substr(1)));
  throw std::invalid_argument("unknown group '" + name + "'");
}

Json element_to_json(const Element& g) { return vec_to_json(g); }

Element element_from_json(const Group& G, const Json& j) {
  if (j.is_array()) {
    Element g = vec_from_json(j);
    if (g.size() != G.hirsch()) throw std::invalid_argument("element has wrong length: " + j.dump());
    return g;
  }
  if (j.is_object()) {
    Element g = G.identity();
    for (const auto& [name, e] : j.items()) g[G.presentation().index_of(name)] = int_from_json(e);
    return g;
  }
  throw std::invalid_argument("cannot read element from " + j.dump());
}

Json hom_to_json(const GroupHom& f) {
  Json j = Json::object();
  for (std::size_t i = 0; i < f.images.size(); ++i)
    j[f.domain->presentation().names[i]] = element_to_json(f.images[i]);
  return j;
}

GroupHom hom_from_json(const GroupPtr& domain, const GroupPtr& codomain, const Json& j) {
  GroupHom f{domain, codomain, {}};
  for (const auto& n : domain->presentation().names) {
    if (!j.contains(n)) throw std::invalid_argument("no image for generator '" + n + "'");
    f.images.push_back(element_from_json(*codomain, j.at(n)));
  }
  return f;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace tcsep
