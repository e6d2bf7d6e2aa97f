#include "fcw/stallings.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace fcw::stallings {

  std::optional<std::size_t> Digraph::step(std::size_t state,
                                           Symbol      x,
                                           int         sign) const {
    auto const& m  = sign > 0 ? out[state] : in[state];
    auto        it = m.find(x);
    if (it == m.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  namespace {

    void bw_append(BasisWord& bw, std::size_t idx, std::int64_t e) {
      if (e == 0) {
        return;
      }
      if (!bw.empty() && bw.back().first == idx) {
        bw.back().second += e;
        if (bw.back().second == 0) {
          bw.pop_back();
        }
        return;
      }
      bw.emplace_back(idx, e);
    }

    void bw_append(BasisWord& bw, BasisWord const& other) {
      for (auto const& [i, e] : other) {
        bw_append(bw, i, e);
      }
    }

    // Walks x^e from `start`, skipping whole cycles of the x-orbit. Returns
    // the end state and the number of letters consumed.
    std::pair<std::size_t, std::int64_t> walk(Digraph const& g,
                                              std::size_t    start,
                                              Symbol         x,
                                              std::int64_t   e) {
      int          sign = e < 0 ? -1 : 1;
      std::int64_t n    = e < 0 ? -e : e;
      std::size_t  cur  = start;
      std::int64_t done = 0;
      while (done < n) {
        auto next = g.step(cur, x, sign);
        if (!next) {
          break;
        }
        cur = *next;
        ++done;
        if (cur == start && done < n) {
          done = n - (n % done);
        }
      }
      return {cur, done};
    }

    // Union-find based folding of a labelled graph.
    class FoldGraph {
     public:
      std::size_t add_state() {
        parent_.push_back(parent_.size());
        out_.emplace_back();
        in_.emplace_back();
        return parent_.size() - 1;
      }

      std::size_t find(std::size_t s) {
        while (parent_[s] != s) {
          parent_[s] = parent_[parent_[s]];
          s          = parent_[s];
        }
        return s;
      }

      void add_edge(std::size_t u, Symbol x, std::size_t v) {
        link(find(u), x, find(v));
        drain();
      }

      void add_loop(std::size_t base, Word const& w) {
        auto letters = w.letters();
        if (letters.empty()) {
          return;
        }
        std::size_t cur = find(base);
        for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
          auto [x, sign] = letters[i];
          auto& m        = sign > 0 ? out_[cur] : in_[cur];
          auto  it       = m.find(x);
          if (it != m.end()) {
            cur = find(it->second);
            continue;
          }
          std::size_t nxt = add_state();
          if (sign > 0) {
            link(cur, x, nxt);
          } else {
            link(nxt, x, cur);
          }
          drain();
          cur = find(nxt);
        }
        auto [x, sign] = letters.back();
        std::size_t b  = find(base);
        if (sign > 0) {
          link(cur, x, b);
        } else {
          link(b, x, cur);
        }
        drain();
      }

      // Compacts live states into a Digraph; returns it with the index of
      // the basepoint.
      std::pair<Digraph, std::size_t> extract(std::size_t base) {
        std::vector<std::size_t> index(parent_.size(), SIZE_MAX);
        Digraph                  g;
        for (std::size_t s = 0; s < parent_.size(); ++s) {
          if (find(s) == s) {
            index[s] = g.add_state();
          }
        }
        for (std::size_t s = 0; s < parent_.size(); ++s) {
          if (find(s) != s) {
            continue;
          }
          for (auto const& [x, t] : out_[s]) {
            g.add_edge(index[s], x, index[find(t)]);
          }
        }
        return {std::move(g), index[find(base)]};
      }

     private:
      void link(std::size_t u, Symbol x, std::size_t v) {
        auto ou = out_[u].find(x);
        if (ou != out_[u].end()) {
          std::size_t w = find(ou->second);
          if (w != v) {
            queue_.emplace_back(w, v);
          }
          return;
        }
        auto iv = in_[v].find(x);
        if (iv != in_[v].end()) {
          std::size_t w = find(iv->second);
          if (w != u) {
            queue_.emplace_back(w, u);
          }
          return;
        }
        out_[u][x] = v;
        in_[v][x]  = u;
      }

      void merge(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return;
        }
        if (b < a) {
          std::swap(a, b);
        }
        auto ob = std::move(out_[b]);
        auto ib = std::move(in_[b]);
        out_[b].clear();
        in_[b].clear();
        std::vector<bool> in_loop;
        for (auto const& [x, v] : ob) {
          std::size_t vr = find(v);
          if (vr != b) {
            auto it = in_[vr].find(x);
            if (it != in_[vr].end() && find(it->second) == b) {
              in_[vr].erase(it);
            }
          }
        }
        for (auto const& [x, u] : ib) {
          std::size_t ur = find(u);
          in_loop.push_back(ur == b);
          if (ur != b) {
            auto it = out_[ur].find(x);
            if (it != out_[ur].end() && find(it->second) == b) {
              out_[ur].erase(it);
            }
          }
        }
        parent_[b] = a;
        for (auto const& [x, v] : ob) {
          link(a, x, find(v));
        }
        std::size_t k = 0;
        for (auto const& [x, u] : ib) {
          if (!in_loop[k++]) {
            link(find(u), x, a);
          }
        }
      }

      void drain() {
        while (!queue_.empty()) {
          auto [a, b] = queue_.back();
          queue_.pop_back();
          merge(a, b);
        }
      }

      std::vector<std::size_t>                    parent_;
      std::vector<std::map<Symbol, std::size_t>>  out_;
      std::vector<std::map<Symbol, std::size_t>>  in_;
      std::vector<std::pair<std::size_t, std::size_t>> queue_;
    };

    // Removes non-basepoint states of degree <= 1 until none remain.
    std::vector<bool> prune(Digraph& g, std::size_t root) {
      std::vector<bool>        alive(g.size(), true);
      std::vector<std::size_t> work;
      auto degree = [&](std::size_t s) { return g.out[s].size() + g.in[s].size(); };
      for (std::size_t s = 0; s < g.size(); ++s) {
        if (s != root && degree(s) <= 1) {
          work.push_back(s);
        }
      }
      while (!work.empty()) {
        std::size_t s = work.back();
        work.pop_back();
        if (!alive[s] || s == root || degree(s) > 1) {
          continue;
        }
        alive[s] = false;
        for (auto const& [x, t] : g.out[s]) {
          g.in[t].erase(x);
          if (t != root && degree(t) <= 1) {
            work.push_back(t);
          }
        }
        for (auto const& [x, u] : g.in[s]) {
          g.out[u].erase(x);
          if (u != root && degree(u) <= 1) {
            work.push_back(u);
          }
        }
        g.out[s].clear();
        g.in[s].clear();
      }
      return alive;
    }

    std::vector<Symbol> sorted_labels(Digraph const& g, std::size_t s) {
      std::vector<Symbol> labels;
      for (auto const& kv : g.out[s]) {
        labels.push_back(kv.first);
      }
      for (auto const& kv : g.in[s]) {
        labels.push_back(kv.first);
      }
      std::sort(labels.begin(), labels.end(), ByName{});
      labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
      return labels;
    }

    struct ParentEdge {
      std::size_t  from = SIZE_MAX;
      Symbol       label;
      int          sign = 0;
    };

  }  // namespace

  std::pair<std::size_t, Word> trace_prefix(Digraph const& g,
                                            std::size_t    start,
                                            Word const&    w) {
    std::size_t cur  = start;
    auto const& syls = w.syllables();
    for (std::size_t i = 0; i < syls.size(); ++i) {
      auto [x, e]       = syls[i];
      auto [end, done] = walk(g, cur, x, e);
      std::int64_t n   = e < 0 ? -e : e;
      cur              = end;
      if (done < n) {
        Word rest;
        rest.append(x, (e < 0 ? -1 : 1) * (n - done));
        for (std::size_t j = i + 1; j < syls.size(); ++j) {
          rest.append(syls[j].symbol, syls[j].exponent);
        }
        return {cur, rest};
      }
    }
    return {cur, Word()};
  }

  // Assembles the canonical automaton from a folded graph.
  class Builder {
   public:
    static SubgroupAutomaton finish(Alphabet          ambient,
                                    std::vector<Word> provided,
                                    Digraph           g,
                                    std::size_t       root) {
      auto alive = prune(g, root);

      std::vector<std::size_t> index(g.size(), SIZE_MAX);
      std::vector<std::size_t> order;
      std::vector<ParentEdge>  parent;
      std::deque<std::size_t>  queue{root};
      index[root] = 0;
      order.push_back(root);
      parent.emplace_back();
      while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        for (Symbol x : sorted_labels(g, s)) {
          for (int sign : {1, -1}) {
            auto t = g.step(s, x, sign);
            if (t && alive[*t] && index[*t] == SIZE_MAX) {
              index[*t] = order.size();
              order.push_back(*t);
              parent.push_back({index[s], x, sign});
              queue.push_back(*t);
            }
          }
        }
      }

      SubgroupAutomaton a(std::move(ambient));
      a.provided_ = std::move(provided);
      a.graph_    = Digraph();
      for (std::size_t i = 0; i < order.size(); ++i) {
        a.graph_.add_state();
      }
      for (std::size_t s : order) {
        for (auto const& [x, t] : g.out[s]) {
          a.graph_.add_edge(index[s], x, index[t]);
        }
      }
      a.tree_word_.assign(order.size(), Word());
      for (std::size_t v = 1; v < order.size(); ++v) {
        auto const& p   = parent[v];
        a.tree_word_[v] = a.tree_word_[p.from] * Word::letter(p.label, p.sign);
      }
      a.nontree_.assign(order.size(), {});
      a.basis_.clear();
      for (std::size_t s = 0; s < order.size(); ++s) {
        std::vector<std::pair<Symbol, std::size_t>> edges(
            a.graph_.out[s].begin(), a.graph_.out[s].end());
        std::sort(edges.begin(), edges.end(), [](auto const& x, auto const& y) {
          return x.first.name() < y.first.name();
        });
        for (auto const& [x, t] : edges) {
          bool tree = (parent[t].from == s && parent[t].label == x
                       && parent[t].sign == 1)
                      || (parent[s].from == t && parent[s].label == x
                          && parent[s].sign == -1);
          if (tree) {
            continue;
          }
          a.nontree_[s][x] = a.basis_.size();
          a.basis_.push_back(a.tree_word_[s] * Word::letter(x)
                             * a.tree_word_[t].inverse());
        }
      }
      return a;
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // SubgroupAutomaton
  ////////////////////////////////////////////////////////////////////////

  SubgroupAutomaton::SubgroupAutomaton(Alphabet ambient)
      : ambient_(std::move(ambient)) {
    graph_.add_state();
    tree_word_.emplace_back();
    nontree_.emplace_back();
  }

  SubgroupAutomaton SubgroupAutomaton::build(Alphabet              ambient,
                                             std::span<Word const> generators) {
    FoldGraph fg;
    fg.add_state();
    std::vector<Word> provided(generators.begin(), generators.end());
    for (auto const& w : provided) {
      for (auto const& s : w.syllables()) {
        if (!ambient.contains(s.symbol)) {
          throw UnknownSymbol(std::string(s.symbol.name()));
        }
      }
      fg.add_loop(0, w);
    }
    auto [g, root] = fg.extract(0);
    return Builder::finish(
        std::move(ambient), std::move(provided), std::move(g), root);
  }

  std::size_t SubgroupAutomaton::edge_count() const noexcept {
    std::size_t n = 0;
    for (auto const& m : graph_.out) {
      n += m.size();
    }
    return n;
  }

  bool SubgroupAutomaton::is_whole() const {
    if (state_count() != 1) {
      return false;
    }
    for (Symbol x : ambient_) {
      if (!graph_.out[0].contains(x)) {
        return false;
      }
    }
    return true;
  }

  void SubgroupAutomaton::check_alphabet(Word const& w) const {
    for (auto const& s : w.syllables()) {
      if (!ambient_.contains(s.symbol)) {
        throw UnknownSymbol(std::string(s.symbol.name()));
      }
    }
  }

  bool SubgroupAutomaton::member(Word const& w) const {
    check_alphabet(w);
    auto [state, rest] = trace_prefix(graph_, 0, w);
    return rest.is_identity() && state == 0;
  }

  std::optional<BasisWord> SubgroupAutomaton::express(Word const& w) const {
    for (auto const& s : w.syllables()) {
      if (!ambient_.contains(s.symbol)) {
        return std::nullopt;
      }
    }
    BasisWord   out;
    std::size_t cur = 0;
    for (auto const& [x, e] : w.syllables()) {
      int          sign  = e < 0 ? -1 : 1;
      std::int64_t n     = e * sign;
      std::size_t  start = cur;
      BasisWord    cycle;
      std::int64_t done = 0;
      while (done < n) {
        auto next = graph_.step(cur, x, sign);
        if (!next) {
          return std::nullopt;
        }
        std::size_t src = sign > 0 ? cur : *next;
        auto        it  = nontree_[src].find(x);
        if (it != nontree_[src].end()) {
          bw_append(cycle, it->second, sign);
        }
        cur = *next;
        ++done;
        if (cur == start && done < n) {
          std::int64_t reps = n / done;
          if (cycle.size() == 1) {
            bw_append(out, cycle[0].first, cycle[0].second * reps);
          } else {
            for (std::int64_t r = 0; r < reps; ++r) {
              bw_append(out, cycle);
            }
          }
          cycle.clear();
          n    = n % done;
          done = 0;
          // the remainder is shorter than one cycle
          start = SIZE_MAX;
        }
      }
      bw_append(out, cycle);
    }
    if (cur != 0) {
      return std::nullopt;
    }
    return out;
  }

  Word SubgroupAutomaton::expand(BasisWord const& bw) const {
    Word out;
    for (auto const& [i, e] : bw) {
      out *= basis_.at(i).pow(e);
    }
    return out;
  }

  Word SubgroupAutomaton::coset_rep(Word const& g) const {
    check_alphabet(g);
    auto [state, rest] = trace_prefix(graph_, 0, g);
    return tree_word_[state] * rest;
  }

  std::string SubgroupAutomaton::dot(std::string_view name) const {
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < state_count(); ++s) {
      os << "  " << s << " [shape=" << (s == 0 ? "doublecircle" : "circle")
         << "];\n";
    }
    for (std::size_t s = 0; s < state_count(); ++s) {
      std::vector<std::pair<std::string, std::size_t>> edges;
      for (auto const& [x, t] : graph_.out[s]) {
        edges.emplace_back(std::string(x.name()), t);
      }
      std::sort(edges.begin(), edges.end());
      for (auto const& [label, t] : edges) {
        os << "  " << s << " -> " << t << " [label=\"" << label << "\"];\n";
      }
    }
    os << "}\n";
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Products
  ////////////////////////////////////////////////////////////////////////

  SubgroupAutomaton intersect(SubgroupAutomaton const& a,
                              SubgroupAutomaton const& b) {
    if (a.ambient() != b.ambient()) {
      throw AmbientMismatch("intersect: automata over different free groups");
    }
    auto const& ga = a.graph();
    auto const& gb = b.graph();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    std::vector<std::pair<std::size_t, std::size_t>>            states;
    Digraph                                                     prod;
    auto visit = [&](std::size_t p, std::size_t q) {
      auto [it, fresh] = index.emplace(std::make_pair(p, q), states.size());
      if (fresh) {
        states.emplace_back(p, q);
        prod.add_state();
      }
      return it->second;
    };
    visit(0, 0);
    for (std::size_t k = 0; k < states.size(); ++k) {
      auto [p, q] = states[k];
      for (auto const& [x, p2] : ga.out[p]) {
        auto it = gb.out[q].find(x);
        if (it != gb.out[q].end()) {
          std::size_t t = visit(p2, it->second);
          prod.add_edge(k, x, t);
        }
      }
      for (auto const& [x, p2] : ga.in[p]) {
        auto it = gb.in[q].find(x);
        if (it != gb.in[q].end()) {
          std::size_t t = visit(p2, it->second);
          prod.add_edge(t, x, k);
        }
      }
    }
    auto result = Builder::finish(a.ambient(), {}, std::move(prod), 0);
    // provided generators of an intersection are its basis
    return SubgroupAutomaton::build(a.ambient(), result.basis());
  }

  bool contains(SubgroupAutomaton const& b, SubgroupAutomaton const& a) {
    if (a.ambient() != b.ambient()) {
      throw AmbientMismatch("contains: automata over different free groups");
    }
    return std::all_of(a.basis().begin(), a.basis().end(), [&](Word const& w) {
      return b.member(w);
    });
  }

  bool equal(SubgroupAutomaton const& a, SubgroupAutomaton const& b) {
    return contains(a, b) && contains(b, a);
  }

  SubgroupAutomaton join(SubgroupAutomaton const& a,
                         SubgroupAutomaton const& b) {
    if (a.ambient() != b.ambient()) {
      throw AmbientMismatch("join: automata over different free groups");
    }
    std::vector<Word> gens = a.provided_generators();
    gens.insert(
        gens.end(), b.provided_generators().begin(), b.provided_generators().end());
    return SubgroupAutomaton::build(a.ambient(), gens);
  }

  SplitShape split_shape(SubgroupAutomaton const& a, Word const& p) {
    auto [state, rest] = trace_prefix(a.graph(), 0, p);
    return {a.state_count(), rest.length()};
  }

  std::optional<std::pair<Word, Word>> split_double(
      SubgroupAutomaton const& a,
      Digraph const&           target,
      Word const&              p) {
    // A's graph extended by the dangling path of p's untraceable suffix
    Digraph ext        = a.graph();
    auto [vp, rest]    = trace_prefix(ext, 0, p);
    for (auto const& [x, sign] : rest.letters()) {
      std::size_t n = ext.add_state();
      if (sign > 0) {
        ext.add_edge(vp, x, n);
      } else {
        ext.add_edge(n, x, vp);
      }
      vp = n;
    }

    struct Back {
      std::size_t prev;
      Symbol      label;
      int         sign;
    };
    auto key = [&](std::size_t t, std::size_t s) {
      return static_cast<std::uint64_t>(t) * ext.size() + s;
    };
    std::unordered_map<std::uint64_t, std::size_t>   index;
    std::vector<std::pair<std::size_t, std::size_t>> states;
    std::vector<Back>                                back;
    index.emplace(key(0, 0), 0);
    states.emplace_back(0, 0);
    back.push_back({SIZE_MAX, Symbol(), 0});
    std::size_t found = (vp == 0) ? 0 : SIZE_MAX;
    for (std::size_t k = 0; k < states.size() && found == SIZE_MAX; ++k) {
      auto [t, s] = states[k];
      for (int sign : {1, -1}) {
        auto const& tm = sign > 0 ? target.out[t] : target.in[t];
        for (auto const& [x, t2] : tm) {
          auto s2 = ext.step(s, x, sign);
          if (!s2) {
            continue;
          }
          auto [it, fresh] = index.emplace(key(t2, *s2), states.size());
          if (!fresh) {
            continue;
          }
          states.emplace_back(t2, *s2);
          back.push_back({k, x, sign});
          if (t2 == 0 && *s2 == vp) {
            found = it->second;
            break;
          }
        }
        if (found != SIZE_MAX) {
          break;
        }
      }
    }
    if (found == SIZE_MAX) {
      return std::nullopt;
    }
    std::vector<Syllable> path;
    for (std::size_t k = found; back[k].prev != SIZE_MAX; k = back[k].prev) {
      path.push_back({back[k].label, back[k].sign});
    }
    std::reverse(path.begin(), path.end());
    Word l = Word::reduce(path);
    Word u = p * l.inverse();
    return std::make_pair(u, l);
  }

  std::size_t rank_of(Alphabet const& ambient, std::span<Word const> words) {
    return SubgroupAutomaton::build(ambient, words).rank();
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphism
  ////////////////////////////////////////////////////////////////////////

  namespace {

    struct KeyEdge {
      std::size_t from;
      std::size_t to;
      Symbol      label;
      BasisWord   keys;
      bool        alive = true;
    };

    BasisWord bw_inverse(BasisWord const& bw) {
      BasisWord out;
      for (auto it = bw.rbegin(); it != bw.rend(); ++it) {
        out.emplace_back(it->first, -it->second);
      }
      return out;
    }

    BasisWord bw_mul(BasisWord x, BasisWord const& y) {
      bw_append(x, y);
      return x;
    }

    // Every edge u -x-> v keeps a key word equal to f(u) x f(v)^-1 for a
    // fixed f with f(basepoint) = 1, so parallel edges carry equal
    // elements and basepoint loops spell products of keys.
    std::vector<KeyEdge> fold_with_keys(std::vector<Word> const& keys,
                                        bool                     strict,
                                        std::size_t&             nstates) {
      std::vector<KeyEdge> edges;
      nstates = 1;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        auto letters = keys[i].letters();
        if (letters.empty()) {
          if (strict) {
            throw InvalidScheme("morphism key is the identity");
          }
          continue;
        }
        std::size_t cur = 0;
        for (std::size_t j = 0; j < letters.size(); ++j) {
          auto [x, sign]   = letters[j];
          bool        last = j + 1 == letters.size();
          std::size_t nxt  = last ? 0 : nstates++;
          BasisWord   lab;
          if (last) {
            lab.emplace_back(i, sign);
          }
          if (sign > 0) {
            edges.push_back({cur, nxt, x, lab});
          } else {
            edges.push_back({nxt, cur, x, lab});
          }
          cur = nxt;
        }
      }
      while (true) {
        bool changed = false;
        for (std::size_t i = 0; i < edges.size() && !changed; ++i) {
          if (!edges[i].alive) {
            continue;
          }
          for (std::size_t j = i + 1; j < edges.size() && !changed; ++j) {
            auto& e1 = edges[i];
            auto& e2 = edges[j];
            if (!e2.alive || e1.label != e2.label) {
              continue;
            }
            bool same_from = e1.from == e2.from;
            bool same_to   = e1.to == e2.to;
            if (same_from && same_to) {
              if (strict && e1.keys != e2.keys) {
                throw InvalidScheme("morphism keys are not a free basis");
              }
              e2.alive = false;
              changed  = true;
              continue;
            }
            if (!same_from && !same_to) {
              continue;
            }
            // merge the victim state x into the survivor y
            std::size_t x, y;
            BasisWord   gx, gy;
            if (same_from) {
              bool  keep1 = e1.to == 0 || (e2.to != 0 && e1.to < e2.to);
              auto& ex    = keep1 ? e2 : e1;
              auto& ey    = keep1 ? e1 : e2;
              x = ex.to, y = ey.to, gx = ex.keys, gy = ey.keys;
            } else {
              bool  keep1 = e1.from == 0 || (e2.from != 0 && e1.from < e2.from);
              auto& ex    = keep1 ? e2 : e1;
              auto& ey    = keep1 ? e1 : e2;
              x = ex.from, y = ey.from, gx = ex.keys, gy = ey.keys;
            }
            BasisWord c    = same_from ? bw_mul(bw_inverse(gy), gx) : bw_mul(gy, bw_inverse(gx));
            BasisWord cinv = bw_inverse(c);
            for (auto& e : edges) {
              if (!e.alive) {
                continue;
              }
              if (e.from == x) {
                e.keys = bw_mul(c, e.keys);
                e.from = y;
              }
              if (e.to == x) {
                e.keys = bw_mul(e.keys, cinv);
                e.to   = y;
              }
            }
            changed = true;
          }
        }
        if (!changed) {
          break;
        }
      }
      std::erase_if(edges, [](KeyEdge const& e) { return !e.alive; });
      return edges;
    }

  }  // namespace

  KeyedGraph::KeyedGraph(std::vector<Word> const& keys, bool strict) {
    std::size_t nstates = 0;
    auto        edges   = fold_with_keys(keys, strict, nstates);
    out_.resize(nstates);
    in_.resize(nstates);
    for (auto const& e : edges) {
      out_[e.from][e.label] = {e.to, e.keys};
      in_[e.to][e.label]    = {e.from, bw_inverse(e.keys)};
    }
  }

  std::optional<BasisWord> KeyedGraph::trace(Word const& w) const {
    std::size_t cur = 0;
    BasisWord   out;
    for (auto const& [x, e] : w.syllables()) {
      int          sign  = e < 0 ? -1 : 1;
      std::int64_t n     = e * sign;
      std::size_t  start = cur;
      BasisWord    cycle;
      std::int64_t done = 0;
      while (done < n) {
        auto const& m  = sign > 0 ? out_[cur] : in_[cur];
        auto        it = m.find(x);
        if (it == m.end()) {
          return std::nullopt;
        }
        bw_append(cycle, it->second.keys);
        cur = it->second.to;
        ++done;
        if (cur == start && done < n) {
          std::int64_t reps = n / done;
          if (cycle.size() == 1) {
            bw_append(out, cycle[0].first, cycle[0].second * reps);
          } else {
            for (std::int64_t r = 0; r < reps; ++r) {
              bw_append(out, cycle);
            }
          }
          cycle.clear();
          n     = n % done;
          done  = 0;
          start = SIZE_MAX;
        }
      }
      bw_append(out, cycle);
    }
    if (cur != 0) {
      return std::nullopt;
    }
    return out;
  }

  Word substitute(BasisWord const& bw, std::vector<Word> const& words) {
    Word out;
    for (auto const& [i, e] : bw) {
      out *= words.at(i).pow(e);
    }
    return out;
  }

  Morphism::Morphism(Alphabet          ambient,
                     std::vector<Word> domain_basis,
                     std::vector<Word> images)
      : ambient_(std::move(ambient)),
        keys_(std::move(domain_basis)),
        images_(std::move(images)) {
    if (keys_.size() != images_.size()) {
      throw InvalidScheme("morphism: key and image counts differ");
    }
    domain_ = std::make_shared<SubgroupAutomaton const>(
        SubgroupAutomaton::build(ambient_, keys_));
    codomain_ = std::make_shared<SubgroupAutomaton const>(
        SubgroupAutomaton::build(ambient_, images_));
    if (domain_->rank() != keys_.size()) {
      throw InvalidScheme("morphism: domain generators are not a free basis");
    }
    if (codomain_->rank() != keys_.size()) {
      throw InvalidScheme("morphism: images do not freely generate the codomain");
    }
    forward_  = std::make_shared<KeyedGraph const>(keys_, true);
    backward_ = std::make_shared<KeyedGraph const>(images_, true);
  }

  std::optional<Word> Morphism::try_apply(Word const& w) const {
    auto bw = forward_->trace(w);
    if (!bw) {
      return std::nullopt;
    }
    return substitute(*bw, images_);
  }

  std::optional<Word> Morphism::try_apply_inverse(Word const& w) const {
    auto bw = backward_->trace(w);
    if (!bw) {
      return std::nullopt;
    }
    return substitute(*bw, keys_);
  }

  Word Morphism::apply(Word const& w) const {
    auto r = try_apply(w);
    if (!r) {
      throw NotAMember("morphism applied outside its domain: " + w.str());
    }
    return *r;
  }

  Word Morphism::apply_inverse(Word const& w) const {
    auto r = try_apply_inverse(w);
    if (!r) {
      throw NotAMember("inverse morphism applied outside its domain: " + w.str());
    }
    return *r;
  }

  SubgroupAutomaton Morphism::image(SubgroupAutomaton const& s) const {
    std::vector<Word> gens;
    for (auto const& b : s.basis()) {
      gens.push_back(apply(b));
    }
    return SubgroupAutomaton::build(ambient_, gens);
  }

  Morphism Morphism::inverse() const {
    Morphism m;
    m.ambient_  = ambient_;
    m.keys_     = images_;
    m.images_   = keys_;
    m.domain_   = codomain_;
    m.codomain_ = domain_;
    m.forward_  = backward_;
    m.backward_ = forward_;
    return m;
  }

  Word apply_morphism(Morphism const& phi, Word const& w) {
    return phi.apply(w);
  }

  SubgroupAutomaton subgroup_image(Morphism const&          phi,
                                   SubgroupAutomaton const& s) {
    return phi.image(s);
  }

}  // namespace fcw::stallings
