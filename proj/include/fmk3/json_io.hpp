#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fmk3/disc_form.hpp"
#include "fmk3/fm_counting.hpp"
#include "fmk3/lattice.hpp"

namespace fmk3 {

using json = nlohmann::ordered_json;

inline std::string rat_to_string(const Rat& r) {
  return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    const Int num(s.substr(0, slash));
    const Int den(s.substr(slash + 1));
    require(den != 0, "fraction with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed fraction string: " + s);
  }
}

// Lattice file format: {"label": optional string, "gram": [[int, ...], ...]}
inline IntegerLattice lattice_from_json(const json& j) {
  require(j.is_object(), "lattice JSON: document must be an object");
  require(j.contains("gram"), "lattice JSON: missing \"gram\"");
  const json& gram = j["gram"];
  require(gram.is_array() && !gram.empty(),
          "lattice JSON: \"gram\" must be a nonempty array of rows");
  const std::size_t n = gram.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = gram[i];
    require(row.is_array() && row.size() == n,
            "lattice JSON: gram[" + std::to_string(i) + "] must have " +
                std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) {
      require(row[k].is_number_integer(),
              "lattice JSON: gram[" + std::to_string(i) + "][" +
                  std::to_string(k) + "] is not an integer");
      m(i, k) = Int(row[k].get<std::int64_t>());
    }
  }
  std::string label;
  if (j.contains("label")) {
    require(j["label"].is_string(), "lattice JSON: \"label\" must be a string");
    label = j["label"].get<std::string>();
  }
  return IntegerLattice(std::move(m), std::move(label));
}

inline json lattice_to_json(const IntegerLattice& l) {
  json j;
  if (!l.label().empty()) j["label"] = l.label();
  json gram = json::array();
  for (std::size_t i = 0; i < l.rank(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < l.rank(); ++k) {
      require(l.gram()(i, k) >= std::numeric_limits<std::int64_t>::min() &&
                  l.gram()(i, k) <= std::numeric_limits<std::int64_t>::max(),
              "lattice JSON: Gram entry does not fit a 64-bit integer");
      row.push_back(static_cast<std::int64_t>(l.gram()(i, k)));
    }
    gram.push_back(std::move(row));
  }
  j["gram"] = std::move(gram);
  return j;
}

inline IntegerLattice load_lattice_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open lattice file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("lattice file " + path + ": " + e.what());
  }
  return lattice_from_json(j);
}

inline json disc_form_to_json(const FiniteQuadraticForm& f) {
  json j;
  json orders = json::array();
  for (const Int& d : f.orders()) orders.push_back(static_cast<std::int64_t>(d));
  j["orders"] = std::move(orders);
  json q = json::array();
  for (std::size_t i = 0; i < f.num_generators(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < f.num_generators(); ++k)
      row.push_back(rat_to_string(f.q_gram()(i, k)));
    q.push_back(std::move(row));
  }
  j["q_gram"] = std::move(q);
  return j;
}

inline FiniteQuadraticForm disc_form_from_json(const json& j) {
  require(j.is_object() && j.contains("orders") && j.contains("q_gram"),
          "form JSON: need \"orders\" and \"q_gram\"");
  std::vector<Int> orders;
  for (const auto& d : j["orders"]) {
    require(d.is_number_integer(), "form JSON: orders must be integers");
    orders.emplace_back(d.get<std::int64_t>());
  }
  const std::size_t k = orders.size();
  const json& q = j["q_gram"];
  require(q.is_array() && q.size() == k, "form JSON: q_gram size mismatch");
  RatMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    require(q[i].is_array() && q[i].size() == k,
            "form JSON: q_gram row size mismatch");
    for (std::size_t c = 0; c < k; ++c) {
      require(q[i][c].is_string(),
              "form JSON: q_gram entries must be fraction strings");
      m(i, c) = rat_from_string(q[i][c].get<std::string>());
    }
  }
  return FiniteQuadraticForm(std::move(orders), std::move(m));
}

inline json isometry_to_json(const DiscIsometry& phi) {
  json m = json::array();
  for (std::size_t i = 0; i < phi.map.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < phi.map.cols(); ++j)
      row.push_back(static_cast<std::int64_t>(phi.map(i, j)));
    m.push_back(std::move(row));
  }
  return m;
}

inline DiscIsometry isometry_from_json(const json& j, std::size_t k) {
  require(j.is_array() && j.size() == k, "isometry JSON: matrix size mismatch");
  IntMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    require(j[i].is_array() && j[i].size() == k,
            "isometry JSON: matrix row size mismatch");
    for (std::size_t c = 0; c < k; ++c) {
      require(j[i][c].is_number_integer(),
              "isometry JSON: entries must be integers");
      m(i, c) = Int(j[i][c].get<std::int64_t>());
    }
  }
  return DiscIsometry{std::move(m)};
}

// Counting input: forms plus subgroups given by generator matrices.
// {
//   "genus_reps": [{"form": {...}, "isometry_generators": [[[..]], ...]}, ...],
//   "hodge_generators": [[[..]], ...]
// }
inline CountingInput counting_input_from_json(const json& j,
                                              std::size_t bound) {
  require(j.is_object() && j.contains("genus_reps") &&
              j.contains("hodge_generators"),
          "counting JSON: need \"genus_reps\" and \"hodge_generators\"");
  CountingInput input;
  for (const auto& rep : j["genus_reps"]) {
    require(rep.is_object() && rep.contains("form") &&
                rep.contains("isometry_generators"),
            "counting JSON: each genus rep needs \"form\" and "
            "\"isometry_generators\"");
    FiniteQuadraticForm form = disc_form_from_json(rep["form"]);
    std::vector<DiscIsometry> gens;
    for (const auto& gj : rep["isometry_generators"])
      gens.push_back(isometry_from_json(gj, form.num_generators()));
    DiscSubgroup sub = subgroup_from_generators(form, gens, bound);
    input.genus_reps.push_back(
        GenusRepresentative{std::move(form), std::move(sub)});
  }
  require(!input.genus_reps.empty(), "counting JSON: no genus representatives");
  const FiniteQuadraticForm& base = input.genus_reps.front().form;
  std::vector<DiscIsometry> hodge_gens;
  for (const auto& gj : j["hodge_generators"])
    hodge_gens.push_back(isometry_from_json(gj, base.num_generators()));
  input.hodge_image = subgroup_from_generators(base, hodge_gens, bound);
  return input;
}

}  // namespace fmk3
