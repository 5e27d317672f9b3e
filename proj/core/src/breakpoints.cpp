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

#include "mpg/breakpoints.hpp"

#include <algorithm>
#include <map>

#include "mpg/error.hpp"
#include "mpg/min_mean_cycle.hpp"
#include "mpg/policy_iteration.hpp"
#include "mpg/zero_player.hpp"

namespace mpg {

Rational BreakpointCurve::evaluate(const Rational& x) const {
  for (const auto& p : pieces) {
    if ((!p.left || *p.left <= x) && (!p.right || x <= *p.right)) return p.at(x);
  }
  throw Error(ErrorCode::DomainError, "x = " + to_string(x) + " is not covered by the curve");
}

bool BreakpointCurve::is_concave() const {
  for (std::size_t k = 1; k < pieces.size(); ++k) {
    if (pieces[k].slope > pieces[k - 1].slope) return false;
  }
  return true;
}

std::string ExtendedRational::str() const {
  if (infinity < 0) return "-inf";
  if (infinity > 0) return "+inf";
  return to_string(value);
}

namespace {

EdgeId require_edge(const Game& g, EdgeRef edge) {
  const auto [i, j] = edge;
  if (i < 0 || i >= g.num_vertices()) throw Error(ErrorCode::DomainError, "edge source out of range");
  return g.edge_id(i, j);
}

bool contains_edge(const std::vector<Vertex>& cycle, EdgeRef edge) {
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    if (cycle[k] == edge.first && cycle[(k + 1) % cycle.size()] == edge.second) return true;
  }
  return false;
}

void finish(BreakpointCurve& c) {
  std::vector<CurvePiece> merged;
  for (auto& p : c.pieces) {
    if (p.left && p.right && *p.left == *p.right && c.pieces.size() > 1) continue;
    if (!merged.empty() && merged.back().right && p.left && *merged.back().right == *p.left &&
        merged.back().slope == p.slope && merged.back().intercept == p.intercept) {
      merged.back().right = p.right;
      continue;
    }
    merged.push_back(std::move(p));
  }
  c.pieces = std::move(merged);
  c.breakpoints.clear();
  for (std::size_t k = 1; k < c.pieces.size(); ++k) {
    const auto& a = c.pieces[k - 1];
    const auto& b = c.pieces[k];
    if (a.right && b.left && *a.right == *b.left) c.breakpoints.push_back(*b.left);
  }
}

struct Line {
  Rational slope;
  Rational intercept;
  std::vector<Vertex> cycle;
};

}  // namespace

OnePlayerBreakpoints one_player_breakpoints(const Game& g, EdgeRef edge) {
  if (!g.is_one_player(Player::Min)) throw Error(ErrorCode::NotOnePlayer, "every vertex must belong to Min");
  if (g.num_vertices() > 10) throw Error(ErrorCode::TooLarge, "cycle enumeration is limited to 10 vertices");
  const EdgeId eid = require_edge(g, edge);
  if (!is_strongly_connected(g)) throw Error(ErrorCode::NotStronglyConnected, "graph is not strongly connected");
  const Rational r_e = g.weight(eid);

  // Best line per slope: lines of cycles through the edge have slope 1/l.
  std::map<Rational, Line> best;
  std::optional<Rational> free_min;
  std::vector<Line> with_edge;
  for (auto& cyc : elementary_cycles(g)) {
    const auto l = static_cast<long>(cyc.size());
    Line line;
    if (contains_edge(cyc, edge)) {
      line.slope = Rational(1, static_cast<unsigned long>(l));
      line.intercept = (cycle_weight(g, cyc) - r_e) / l;
    } else {
      line.slope = 0;
      line.intercept = cycle_weight(g, cyc) / l;
      if (!free_min || line.intercept < *free_min) free_min = line.intercept;
    }
    line.cycle = std::move(cyc);
    if (line.slope != 0) with_edge.push_back(line);
    auto it = best.find(line.slope);
    if (it == best.end() || line.intercept < it->second.intercept) best[line.slope] = std::move(line);
  }

  OnePlayerBreakpoints out;
  // Lower envelope: walk from -inf (largest slope) toward smaller slopes.
  std::vector<Line> lines;
  for (auto& [s, l] : best) lines.push_back(l);
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.slope > b.slope; });
  std::size_t cur = 0;
  std::optional<Rational> x0;
  while (true) {
    std::optional<Rational> next_x;
    std::size_t next = cur;
    for (std::size_t k = cur + 1; k < lines.size(); ++k) {
      Rational x = (lines[k].intercept - lines[cur].intercept) / (lines[cur].slope - lines[k].slope);
      if (x0 && x <= *x0) continue;
      if (!next_x || x < *next_x || (x == *next_x && lines[k].slope < lines[next].slope)) {
        next_x = x;
        next = k;
      }
    }
    CurvePiece p;
    p.left = x0;
    p.right = next_x;
    p.slope = lines[cur].slope;
    p.intercept = lines[cur].intercept;
    p.witness_cycle = lines[cur].cycle;
    out.curve.pieces.push_back(std::move(p));
    if (!next_x) break;
    x0 = next_x;
    cur = next;
  }
  finish(out.curve);

  if (with_edge.empty()) {
    out.y.infinity = -1;
  } else if (!free_min) {
    out.y.infinity = 1;
  } else {
    std::optional<Rational> y;
    for (const auto& l : with_edge) {
      Rational x = (*free_min - l.intercept) / l.slope;
      if (!y || x > *y) y = std::move(x);
    }
    out.y.value = *y;
  }
  return out;
}

namespace {

struct Sample {
  Rational x;
  Rational value;
  Rational slope;
  Rational intercept;
  std::vector<Vertex> cycle;

  Rational line_at(const Rational& t) const { return slope * t + intercept; }
  bool same_line(const Sample& o) const { return slope == o.slope && intercept == o.intercept; }
};

class Scanner {
 public:
  Scanner(const Game& g, EdgeRef edge, std::size_t budget)
      : g_(g), edge_(edge), eid_(require_edge(g, edge)), budget_(budget) {}

  std::optional<Sample> sample(const Rational& x) {
    if (curve.solves >= budget_) {
      curve.complete = false;
      return std::nullopt;
    }
    ++curve.solves;
    const Game gx = g_.with_weight(eid_, x);
    const SolveResult res = solve_mpg(gx);
    Sample s;
    s.x = x;
    s.value = res.lambda;
    const CycleDecomposition cd = cycle_structure(res.pair.successor);
    s.cycle = cd.cycles.front();
    for (const auto& c : cd.cycles) {
      if (contains_edge(c, edge_)) {
        s.cycle = c;
        break;
      }
    }
    if (contains_edge(s.cycle, edge_)) {
      s.slope = Rational(1, static_cast<unsigned long>(s.cycle.size()));
      s.intercept = s.value - s.slope * x;
    } else {
      s.slope = 0;
      s.intercept = s.value;
    }
    return s;
  }

  void emit(const Rational& a, const Rational& b, const Sample& line) {
    CurvePiece p;
    p.left = a;
    p.right = b;
    p.slope = line.slope;
    p.intercept = line.intercept;
    p.witness_cycle = line.cycle;
    curve.pieces.push_back(std::move(p));
  }

  // Accepts [a.x, b.x] on a's line if the midpoint agrees, else splits.
  void scan(const Sample& a, const Sample& b) {
    if (a.x >= b.x) return;
    if (a.same_line(b)) {
      const Rational m = (a.x + b.x) / 2;
      auto sm = sample(m);
      if (!sm) return;
      if (sm->value == a.line_at(m)) {
        emit(a.x, b.x, a);
        return;
      }
      scan(a, *sm);
      scan(*sm, b);
      return;
    }
    // An endpoint already on the other line: the breakpoint sits there.
    if (a.value == b.line_at(a.x)) {
      side(with_line(a, b), b, b);
      return;
    }
    if (b.value == a.line_at(b.x)) {
      side(a, with_line(b, a), a);
      return;
    }
    if (a.slope != b.slope) {
      const Rational xs = (b.intercept - a.intercept) / (a.slope - b.slope);
      if (a.x < xs && xs < b.x) {
        auto ss = sample(xs);
        if (!ss) return;
        if (ss->value == a.line_at(xs)) {
          side(a, with_line(*ss, a), a);
          side(with_line(*ss, b), b, b);
          return;
        }
        scan(a, *ss);
        scan(*ss, b);
        return;
      }
    }
    const Rational m = (a.x + b.x) / 2;
    auto sm = sample(m);
    if (!sm) return;
    scan(a, *sm);
    scan(*sm, b);
  }

  BreakpointCurve curve;

 private:
  // s re-expressed on the line of `line`; valid when s.value lies on it.
  static Sample with_line(const Sample& s, const Sample& line) {
    Sample out = s;
    out.slope = line.slope;
    out.intercept = line.intercept;
    out.cycle = line.cycle;
    return out;
  }

  // Both endpoints lie on `line`; certify at the midpoint or recurse.
  void side(const Sample& a, const Sample& b, const Sample& line) {
    if (a.x >= b.x) return;
    const Rational m = (a.x + b.x) / 2;
    auto sm = sample(m);
    if (!sm) return;
    if (sm->value == line.line_at(m)) {
      emit(a.x, b.x, line);
      return;
    }
    scan(with_line(a, line), *sm);
    scan(*sm, with_line(b, line));
  }

  const Game& g_;
  EdgeRef edge_;
  EdgeId eid_;
  std::size_t budget_;
};

}  // namespace

BreakpointCurve two_player_breakpoint_scan(const Game& g, EdgeRef edge, const Rational& lo, const Rational& hi,
                                           std::size_t budget) {
  Scanner sc(g, edge, budget);
  if (lo > hi) return sc.curve;
  auto a = sc.sample(lo);
  if (!a) return sc.curve;
  if (lo == hi) {
    sc.emit(lo, hi, *a);
    return sc.curve;
  }
  auto b = sc.sample(hi);
  if (!b) return sc.curve;
  sc.scan(*a, *b);
  finish(sc.curve);
  return sc.curve;
}

std::string curve_to_csv(const BreakpointCurve& curve) {
  std::string out = "x_left,x_right,slope,intercept\n";
  auto bound = [](const std::optional<Rational>& b, const char* inf) { return b ? to_string(*b) : std::string(inf); };
  for (const auto& p : curve.pieces) {
    out += bound(p.left, "-inf") + "," + bound(p.right, "+inf") + "," + to_string(p.slope) + "," +
           to_string(p.intercept) + "\n";
  }
  return out;
}

}  // namespace mpg
