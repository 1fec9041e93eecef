#include "symquot/spec_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace symquot {

namespace {

std::vector<Vec3> read_vectors(const YAML::Node& n) {
  if (!n.IsSequence()) throw std::invalid_argument("spec document: 'u' must be a list of 3-vectors");
  std::vector<Vec3> out;
  for (const auto& item : n) {
    const auto v = item.as<std::vector<double>>();
    if (v.size() != 3) throw std::invalid_argument("spec document: every u entry needs 3 coordinates");
    out.emplace_back(v[0], v[1], v[2]);
  }
  return out;
}

}  // namespace

SpecPtr parse_spec_document(std::string_view text) {
  YAML::Node doc;
  try {
    doc = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("spec document: ") + e.what());
  }
  if (!doc.IsMap()) throw std::invalid_argument("spec document must be a key-value mapping");
  for (const auto& kv : doc) {
    const auto key = kv.first.as<std::string>();
    if (key != "group" && key != "k" && key != "variant" && key != "centered" && key != "u" && key != "alpha" &&
        key != "beta") {
      throw std::invalid_argument("spec document: unknown key '" + key + "'");
    }
  }
  if (!doc["group"]) throw std::invalid_argument("spec document: missing 'group'");

  try {
    const auto group = doc["group"].as<std::string>();
    std::optional<int> k;
    if (doc["k"]) k = doc["k"].as<int>();
    const Variant variant = doc["variant"] ? parse_variant(doc["variant"].as<std::string>()) : Variant::isometric;
    const bool centered = doc["centered"] ? doc["centered"].as<bool>() : true;

    std::optional<std::vector<Vec3>> u;
    std::optional<std::vector<int>> alpha;
    std::optional<std::vector<double>> beta;
    if (doc["u"]) u = read_vectors(doc["u"]);
    if (doc["alpha"]) alpha = doc["alpha"].as<std::vector<int>>();
    if (doc["beta"]) beta = doc["beta"].as<std::vector<double>>();

    if (u && alpha && beta) {
      return EmbeddingSpec::create(SymmetryGroup::make(group, k), std::move(*u), std::move(*alpha), std::move(*beta),
                                   centered, "custom");
    }
    const SpecPtr row = registry_lookup(group, variant, k);
    if (!u && !alpha && !beta && centered == row->centered()) return row;
    return EmbeddingSpec::create(row->group(), u ? *u : row->u(), alpha ? *alpha : row->alpha(),
                                 beta ? *beta : row->beta(), centered, row->label() + "+override");
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("spec document: ") + e.what());
  }
}

SpecPtr load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec document '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_document(ss.str());
}

std::string dump_spec_document(const EmbeddingSpec& spec) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "group" << YAML::Value << spec.group()->name();
  out << YAML::Key << "centered" << YAML::Value << spec.centered();
  out << YAML::Key << "u" << YAML::Value << YAML::BeginSeq;
  for (const Vec3& v : spec.u()) out << YAML::Flow << std::vector<double>{v.x(), v.y(), v.z()};
  out << YAML::EndSeq;
  out << YAML::Key << "alpha" << YAML::Value << YAML::Flow << spec.alpha();
  out << YAML::Key << "beta" << YAML::Value << YAML::Flow << spec.beta();
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace symquot
