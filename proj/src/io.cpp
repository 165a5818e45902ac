#include "splitpack/io.hpp"

#include <fstream>
#include <sstream>

namespace splitpack {

using nlohmann::json;

namespace {

Rational rational_from_json(const json& j, const std::string& what) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  } catch (const std::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
  throw ParseError(what + ": expected a \"p/q\" or decimal string");
}

}  // namespace

json to_json(const Instance& inst) {
  json items = json::array();
  for (const auto& s : inst.sizes()) items.push_back(s.str());
  return json{{"k", inst.k()}, {"items", std::move(items)}};
}

json to_json(const Packing& p) {
  json bins = json::array();
  json labels = json::array();
  for (const auto& bin : p.bins()) {
    json entries = json::array();
    for (const auto& part : bin.parts) {
      entries.push_back(json{{"item", part.item}, {"part", part.amount.str()}});
    }
    bins.push_back(std::move(entries));
    labels.push_back(std::string(to_string(bin.label)));
  }
  return json{{"bins", std::move(bins)}, {"labels", std::move(labels)}};
}

Instance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("items")) {
    throw ParseError("instance: expected an object with \"k\" and \"items\"");
  }
  if (!j["k"].is_number_integer()) throw ParseError("instance: \"k\" must be an integer");
  if (!j["items"].is_array()) throw ParseError("instance: \"items\" must be an array");
  std::vector<Rational> sizes;
  for (std::size_t i = 0; i < j["items"].size(); ++i) {
    sizes.push_back(rational_from_json(j["items"][i], "instance item " + std::to_string(i)));
  }
  try {
    return Instance(j["k"].get<int>(), std::move(sizes));
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

Packing packing_from_json(const json& j) {
  if (!j.is_object() || !j.contains("bins") || !j["bins"].is_array()) {
    throw ParseError("packing: expected an object with a \"bins\" array");
  }
  const json& bins = j["bins"];
  const json* labels = j.contains("labels") ? &j["labels"] : nullptr;
  if (labels && (!labels->is_array() || labels->size() != bins.size())) {
    throw ParseError("packing: \"labels\" must be an array with one entry per bin");
  }
  Packing p;
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (!bins[b].is_array()) throw ParseError("packing: bin " + std::to_string(b) + " is not an array");
    Bin& bin = p.open_bin();
    if (labels) {
      try {
        bin.label = parse_bin_label((*labels)[b].get<std::string>());
      } catch (const std::exception& e) {
        throw ParseError("packing: bin " + std::to_string(b) + ": " + e.what());
      }
    }
    for (const auto& entry : bins[b]) {
      if (!entry.is_object() || !entry.contains("item") || !entry.contains("part") ||
          !entry["item"].is_number_unsigned()) {
        throw ParseError("packing: bin " + std::to_string(b) +
                         " entries need a non-negative \"item\" and a \"part\"");
      }
      // Entries are kept verbatim (no merging) so validation sees the file as written.
      bin.parts.push_back({entry["item"].get<ItemId>(),
                           rational_from_json(entry["part"], "packing bin " + std::to_string(b))});
    }
  }
  return p;
}

std::string render(const Instance& inst) { return to_json(inst).dump(); }
std::string render(const Packing& p) { return to_json(p).dump(); }

Instance parse_instance(const std::string& text) {
  try {
    return instance_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

Packing parse_packing(const std::string& text) {
  try {
    return packing_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("packing: ") + e.what());
  }
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Instance read_instance(const std::filesystem::path& path) { return instance_from_json(read_json(path)); }
Packing read_packing(const std::filesystem::path& path) { return packing_from_json(read_json(path)); }

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace splitpack
