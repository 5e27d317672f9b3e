/*
 * Copyright 2026 The mpgsmooth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mpg/game_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mpg/error.hpp"

namespace mpg {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + why);
}

const json& require_field(const json& obj, const char* name, const std::string& path) {
  auto it = obj.find(name);
  if (it == obj.end()) parse_fail(path + name, "missing");
  return *it;
}

Rational weight_from_json(const json& w, const std::string& path) {
  try {
    if (w.is_string()) return parse_rational(w.get<std::string>());
    if (w.is_number_integer()) return Rational(w.get<long>());
    if (w.is_number_float()) return Rational(w.get<double>());
  } catch (const Error& e) {
    parse_fail(path, e.what());
  }
  parse_fail(path, "expected a rational string or a number");
}

int vertex_from_json(const json& v, const std::string& path) {
  if (!v.is_number_integer()) parse_fail(path, "expected an integer vertex index");
  return v.get<int>() - 1;
}

}  // namespace

Game load_game(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("<root>", "expected an object");

  const json& n_field = require_field(doc, "n", "");
  if (!n_field.is_number_integer()) parse_fail("n", "expected an integer");
  const int n = n_field.get<int>();

  const json& owner_field = require_field(doc, "owner", "");
  if (!owner_field.is_array()) parse_fail("owner", "expected an array");
  std::vector<Player> owner;
  for (std::size_t i = 0; i < owner_field.size(); ++i) {
    const auto& o = owner_field[i];
    std::string path = "owner[" + std::to_string(i) + "]";
    if (!o.is_string()) parse_fail(path, "expected \"max\" or \"min\"");
    const auto s = o.get<std::string>();
    if (s == "max") {
      owner.push_back(Player::Max);
    } else if (s == "min") {
      owner.push_back(Player::Min);
    } else {
      parse_fail(path, "expected \"max\" or \"min\", got \"" + s + "\"");
    }
  }

  const json& edge_field = require_field(doc, "edges", "");
  if (!edge_field.is_array()) parse_fail("edges", "expected an array");
  std::vector<Edge> edges;
  edges.reserve(edge_field.size());
  for (std::size_t i = 0; i < edge_field.size(); ++i) {
    const auto& e = edge_field[i];
    std::string path = "edges[" + std::to_string(i) + "].";
    if (!e.is_object()) parse_fail("edges[" + std::to_string(i) + "]", "expected an object");
    Edge ed;
    ed.from = vertex_from_json(require_field(e, "from", path), path + "from");
    ed.to = vertex_from_json(require_field(e, "to", path), path + "to");
    ed.weight = weight_from_json(require_field(e, "w", path), path + "w");
    edges.push_back(std::move(ed));
  }

  Game g(n, std::move(owner), std::move(edges));
  require_valid(g);
  return g;
}

std::string save_game(const Game& g) {
  json doc;
  doc["n"] = g.num_vertices();
  json owner = json::array();
  for (Player p : g.owners()) owner.push_back(std::string(to_string(p)));
  doc["owner"] = std::move(owner);
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"from", e.from + 1}, {"to", e.to + 1}, {"w", to_string(e.weight)}});
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

Game load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IOError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_game(buf.str());
}

void save_game_file(const Game& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IOError, "cannot write " + path);
  out << save_game(g);
}

}  // namespace mpg
