// One line per acceptance criterion. Exit status is the number of failed
// criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "fcw/gadgets.hpp"
#include "fcw/rewrite.hpp"
#include "fcw/stallings.hpp"
#include "fcw/verify.hpp"
#include "oracle.hpp"

using namespace fcw;
using gadgets::b_index;
using gadgets::Direction;

namespace {

  using Clock = std::chrono::steady_clock;

  struct Outcome {
    bool        ok = true;
    std::string detail;
    std::string first_failure;

    void expect(bool cond, std::string const& what) {
      if (!cond && ok) {
        first_failure = what;
      }
      ok = ok && cond;
    }
  };

  double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  Symbol sym(std::string_view s) {
    return Symbol::intern(s);
  }

  Word w(std::string_view s) {
    return parse_word(s);
  }

  std::size_t jobs() {
    return std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  }

  Word random_word(std::mt19937_64& rng, std::vector<Symbol> const& gens, std::size_t max_len, std::size_t min_len = 0) {
    std::size_t len = min_len + rng() % (max_len - min_len + 1);
    Word        out;
    while (out.length() < len) {
      out.append(gens[rng() % gens.size()], rng() % 2 ? 1 : -1);
    }
    return out;
  }

  Word random_product(std::mt19937_64& rng, std::vector<Word> const& gens, std::size_t max_factors) {
    Word out;
    for (std::size_t k = 1 + rng() % max_factors; k > 0; --k) {
      out *= gens[rng() % gens.size()].pow(rng() % 2 ? 1 : -1);
    }
    return out;
  }

  // ---- hand-derived membership for words over b, c ----

  // <b>, <c>, <b, c^2> or everything. <b, c^2> is read off its two-state
  // graph: b only at even c-height, and the word ends at even height.
  bool in_menu(std::string const& key, Word const& g) {
    if (key == "G") {
      return true;
    }
    if (key == "b" || key == "c") {
      return g.uses_only({sym(key)});
    }
    std::int64_t h = 0;
    for (auto const& s : g.syllables()) {
      if (s.symbol == sym("c")) {
        h += s.exponent;
      } else if (h % 2 != 0) {
        return false;
      }
    }
    return h % 2 == 0;
  }

  std::vector<Word> menu_gens(std::string const& key) {
    if (key == "b") {
      return {w("b")};
    }
    if (key == "c") {
      return {w("c")};
    }
    return {w("b"), w("c^2")};
  }

  // Generators of the intersection of menu subgroups.
  std::vector<Word> meet_gens(std::vector<std::string> const& keys) {
    bool has_b   = std::count(keys.begin(), keys.end(), "b") > 0;
    bool has_c   = std::count(keys.begin(), keys.end(), "c") > 0;
    bool has_bc2 = std::count(keys.begin(), keys.end(), "bc2") > 0;
    if (has_b && has_c) {
      return {};
    }
    if (has_b) {
      return {w("b")};
    }
    if (has_c) {
      return has_bc2 ? std::vector<Word>{w("c^2")} : std::vector<Word>{w("c")};
    }
    return {w("b"), w("c^2")};
  }

  // b_i occurs in w at c-height -i. Membership in <b_i : i in S> for a
  // word over b, c: c-exponent sum zero and every b-syllable at an index
  // in S.
  bool in_b_span(Word const& g, std::function<bool(std::int64_t)> const& allowed) {
    std::int64_t h = 0;
    for (auto const& s : g.syllables()) {
      if (s.symbol == sym("c")) {
        h += s.exponent;
      } else if (s.symbol == sym("b")) {
        if (!allowed(-h)) {
          return false;
        }
      } else {
        return false;
      }
    }
    return h == 0;
  }

  std::int64_t max_b_index(Word const& g) {
    std::int64_t h = 0, hi = 0, lo = 0;
    bool         any = false;
    for (auto const& s : g.syllables()) {
      if (s.symbol == sym("c")) {
        h += s.exponent;
      } else if (s.symbol == sym("b")) {
        hi  = any ? std::max(hi, -h) : -h;
        lo  = any ? std::min(lo, -h) : -h;
        any = true;
      }
    }
    return std::max(std::abs(hi), std::abs(lo));
  }

  std::vector<std::vector<std::string>> menu_tuples(std::size_t r) {
    std::vector<std::string>              menu{"b", "c", "bc2"};
    std::vector<std::vector<std::string>> out{{}};
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<std::vector<std::string>> next;
      for (auto const& t : out) {
        for (auto const& k : menu) {
          auto u = t;
          u.push_back(k);
          next.push_back(u);
        }
      }
      out = std::move(next);
    }
    return out;
  }

  std::string join_keys(std::vector<std::string> const& keys) {
    std::string out;
    for (auto const& k : keys) {
      out += (out.empty() ? "" : ",") + k;
    }
    return out;
  }

  verify::VerificationReport suite(std::string const&       name,
                                   verify::SuiteParams      p,
                                   std::size_t              samples,
                                   std::uint64_t            seed,
                                   std::size_t              j = jobs()) {
    return verify::run_suite(name, p, samples, seed, j);
  }

  std::string suite_summary(verify::VerificationReport const& r) {
    std::string s = r.suite + " " + r.params + " pass=" + std::to_string(r.pass) + " fail="
                    + std::to_string(r.fail) + " unknown=" + std::to_string(r.unknown);
    if (!r.counterexamples.empty()) {
      s += " first: " + r.counterexamples.front().input + " expected " + r.counterexamples.front().expected
           + " got " + r.counterexamples.front().got;
    }
    return s;
  }

  // ---- criteria ----

  Outcome oracle_equivalence() {
    auto                t0 = Clock::now();
    Outcome             out;
    std::mt19937_64     rng(20240601);
    std::vector<Symbol> gens{sym("b"), sym("c")};
    Alphabet            bc{sym("b"), sym("c")};
    std::size_t         decided = 0, agree = 0, yes = 0;
    for (int n = 0; n < 1000; ++n) {
      std::size_t                  rank = 1 + rng() % 3;
      std::vector<Word>            hs;
      std::vector<oracle::Letters> hl;
      for (std::size_t k = 0; k < rank; ++k) {
        hs.push_back(random_word(rng, gens, 4, 1));
        hl.push_back(oracle::encode(hs.back(), gens));
      }
      Word x;
      if (n % 2 == 0) {
        x = random_product(rng, hs, 3);
      }
      if (n % 2 == 1 || x.length() > 8) {
        x = random_word(rng, gens, 8);
      }
      auto a    = stallings::SubgroupAutomaton::build(bc, hs);
      auto want = oracle::member(hl, oracle::encode(x, gens), 2, 4, rng);
      if (want == oracle::Answer::Undecided) {
        continue;
      }
      ++decided;
      bool got = a.member(x);
      yes += got ? 1 : 0;
      if (got == (want == oracle::Answer::Yes)) {
        ++agree;
      } else {
        out.expect(false, "pair " + std::to_string(n) + ": " + x.str());
      }
    }
    double secs = seconds_since(t0);
    out.expect(decided >= 900, "oracle decided too few pairs");
    out.expect(secs < 10.0, "over 10 s");
    out.detail = std::to_string(agree) + "/" + std::to_string(decided) + " decided pairs agree (" + std::to_string(yes)
                 + " members, " + std::to_string(1000 - decided) + " undecided), "
                 + std::to_string(secs).substr(0, 5) + " s";
    return out;
  }

  Outcome word_problem() {
    auto    t0 = Clock::now();
    Outcome out;
    auto    f   = gadgets::free_bc();
    auto    hb  = make_fixing_hnn("Hb", f, {{"t", Subgroup::free(f, {w("b")})}});
    auto    kj  = gadgets::example_5_4(2).k;
    std::vector<std::pair<std::string, NodePtr>> nodes{
        {"F(b,c)", f}, {"Xi0", gadgets::Xi(0)}, {"Xi3", gadgets::Xi(3)}, {"G*_<b> t", hb}, {"KJ", kj}};
    std::mt19937_64 rng(77);
    std::size_t     checks = 0, unknown = 0;
    for (auto const& [name, node] : nodes) {
      auto const& gens = node->symbols();
      auto        rels = node->is_free() ? std::vector<Word>{} : presentation(node).relators;
      for (int n = 0; n < 1000; ++n) {
        Word x = random_word(rng, gens, 12, 1);
        Word y = random_word(rng, gens, 6);
        std::vector<std::pair<Word, Verdict::Kind>> cases;
        cases.emplace_back(x * x.inverse(), Verdict::Kind::Yes);
        // the normal form of x times x^-1, and x with a relator inserted
        cases.emplace_back(normal_form(node, x) * x.inverse(), Verdict::Kind::Yes);
        if (!rels.empty()) {
          Word r = rels[rng() % rels.size()].conjugate(y);
          cases.emplace_back(x * r * x.inverse(), Verdict::Kind::Yes);
        }
        Word s = Word::letter(gens[static_cast<std::size_t>(n) % gens.size()]);
        cases.emplace_back(s, Verdict::Kind::No);
        cases.emplace_back(s.conjugate(x), Verdict::Kind::No);
        for (auto const& [q, want] : cases) {
          ++checks;
          Verdict v;
          try {
            v = is_trivial(node, q);
          } catch (UnsupportedMembership const&) {
            v = Verdict::unknown();
          }
          unknown += v.is_unknown() ? 1 : 0;
          out.expect(v.kind == want, name + ": " + q.str());
        }
      }
    }
    double secs = seconds_since(t0);
    out.expect(unknown == 0, "unknown verdicts");
    out.expect(secs < 30.0, "over 30 s");
    out.detail = std::to_string(checks) + " triviality checks over F(b,c), Xi0, Xi3, G*_<b> t, KJ; "
                 + std::to_string(unknown) + " unknown, " + std::to_string(secs).substr(0, 5) + " s";
    return out;
  }

  Outcome intersection_lemma() {
    Outcome             out;
    std::mt19937_64     rng(4243);
    auto                f = gadgets::free_bc("G");
    std::vector<Symbol> gens{sym("b"), sym("c")};
    std::size_t         configs = 0, in_i = 0, outside = 0, suite_samples = 0;
    for (std::size_t r = 1; r <= 3; ++r) {
      for (auto const& keys : menu_tuples(r)) {
        ++configs;
        verify::SuiteParams p;
        p.r     = r;
        p.assoc = keys;
        for (std::string name : {"lemma42", "lemma43"}) {
          auto rep = suite(name, p, 300, 42 + configs);
          suite_samples += rep.samples;
          out.expect(rep.ok() && rep.pass == 300, suite_summary(rep));
        }

        // independent pass: classify g with the hand oracle, then reduce
        std::vector<std::pair<std::string, SubgroupPtr>> letters;
        std::vector<Symbol>                              ts;
        Word                                             by;
        for (std::size_t i = 0; i < r; ++i) {
          std::string t = "t" + std::to_string(i + 1);
          letters.emplace_back(t, Subgroup::free(f, menu_gens(keys[i])));
          ts.push_back(sym(t));
          by.append(ts.back(), 1);
        }
        auto k    = make_fixing_hnn("K", f, letters);
        auto meet = meet_gens(keys);
        for (auto const& m : meet) {
          for (auto const& key : keys) {
            out.expect(in_menu(key, m), "meet generator " + m.str() + " outside " + key);
          }
        }
        auto conj_g = Subgroup::conjugate(Subgroup::factor(k, f), by);
        for (int n = 0; n < 300; ++n) {
          Word g   = n % 2 == 0 && !meet.empty() ? random_product(rng, meet, 4) : random_word(rng, gens, 8);
          bool in  = std::all_of(keys.begin(), keys.end(), [&](auto const& key) { return in_menu(key, g); });
          Word gt  = g.conjugate(by);
          std::string tag = join_keys(keys) + " g=" + g.str();
          if (in) {
            ++in_i;
            out.expect(is_trivial(k, g.inverse() * gt).is_yes(), tag + " in I");
          } else {
            ++outside;
            out.expect(normal_form(k, gt).uses_any(Alphabet(ts.begin(), ts.end())), tag + " lost its stable letters");
          }
          if (r == 1) {
            // G n G^t = A
            out.expect(conj_g->member(g).is_yes() == in, tag + " G n G^t");
          }
        }
      }
    }
    out.detail = std::to_string(configs) + " configurations, lemma42+lemma43 " + std::to_string(suite_samples)
                 + " samples, independent: " + std::to_string(in_i) + " in I, " + std::to_string(outside)
                 + " outside";
    return out;
  }

  Outcome join_lemma() {
    Outcome             out;
    std::mt19937_64     rng(4444);
    auto                f = gadgets::free_bc("G");
    std::size_t         configs = 0, witnesses = 0, suite_samples = 0;
    for (std::size_t r = 1; r <= 3; ++r) {
      for (auto const& keys : menu_tuples(r)) {
        ++configs;
        verify::SuiteParams p;
        p.r     = r;
        p.assoc = keys;
        auto rep = suite("lemma44", p, 300, 440 + configs);
        suite_samples += rep.samples;
        out.expect(rep.ok() && rep.pass == 300, suite_summary(rep));

        // g in J written through the conjugates: a in A_i equals a^(t_i)
        std::vector<std::pair<std::string, SubgroupPtr>> letters;
        for (std::size_t i = 0; i < r; ++i) {
          letters.emplace_back("t" + std::to_string(i + 1), Subgroup::free(f, menu_gens(keys[i])));
        }
        auto k = make_fixing_hnn("K", f, letters);
        for (int n = 0; n < 50; ++n) {
          Word g, spelled;
          for (std::size_t j = 1 + rng() % 4; j > 0; --j) {
            std::size_t i    = rng() % r;
            auto        gs   = menu_gens(keys[i]);
            Word        a    = gs[rng() % gs.size()].pow(rng() % 2 ? 1 : -1);
            g               *= a;
            spelled         *= a.conjugate(Word::letter("t" + std::to_string(i + 1)));
          }
          ++witnesses;
          out.expect(equal(k, spelled, g).is_yes(), join_keys(keys) + " g=" + g.str());
        }
      }
    }
    out.detail = std::to_string(configs) + " configurations, lemma44 " + std::to_string(suite_samples)
                 + " samples, " + std::to_string(witnesses) + " spelled join witnesses";
    return out;
  }

  Outcome tail_lemmas() {
    Outcome         out;
    std::mt19937_64 rng(5152);
    std::size_t     accepted = 0, rejected = 0, normal = 0, suite_samples = 0;
    for (std::int64_t m : {0, 1, 3}) {
      verify::SuiteParams p;
      p.m = m;
      for (std::string name : {"lemma51", "lemma52"}) {
        auto rep = suite(name, p, 400, 51 + static_cast<std::uint64_t>(m));
        suite_samples += rep.samples;
        out.expect(rep.ok() && rep.pass == 400, suite_summary(rep));
      }

      auto x       = gadgets::Xi(m);
      auto [t, tp] = gadgets::stable_names(m);
      Word tw = Word::letter(t), tpw = Word::letter(tp);
      for (Direction d : {Direction::Up, Direction::Down}) {
        bool up   = d == Direction::Up;
        auto l    = gadgets::xi_closure(x, m, d);
        auto tail = gadgets::tail_subgroup(x->base(), m, d);
        auto name = std::string("m=") + std::to_string(m) + (up ? " up" : " down");
        for (std::int64_t k = 0; k <= 12; ++k) {
          std::int64_t i = up ? m + k : m - 1 - k;
          auto         v = l->member(b_index(i));
          out.expect(v.is_yes() && equal(x, evaluate(v.witness), b_index(i)).is_yes(),
                     name + " b_" + std::to_string(i));
          ++accepted;
        }
        for (std::int64_t k = 1; k <= 5; ++k) {
          std::int64_t i = up ? m - k : m - 1 + k;
          out.expect(l->member(b_index(i)).is_no(), name + " b_" + std::to_string(i) + " accepted");
          ++rejected;
        }

        Word seed = b_index(up ? m : m - 1);
        std::vector<Word> gens{seed, tw, tpw};
        auto allowed = [&](std::int64_t i) { return up ? i >= m : i <= m - 1; };
        int  found   = 0;
        for (int attempt = 0; found < 200 && attempt < 20000; ++attempt) {
          Word g;
          if (attempt % 2 == 0) {
            // products of conjugates of the seed by positive words in t, t'
            for (std::size_t j = 1 + rng() % 3; j > 0; --j) {
              Word by;
              for (std::size_t q = rng() % 5; q > 0; --q) {
                by *= rng() % 2 ? tw : tpw;
              }
              g *= seed.pow(static_cast<std::int64_t>(rng() % 5) - 2).conjugate(by);
            }
          } else {
            g = random_product(rng, gens, 6);
          }
          Word nf = normal_form(x, g);
          if (!nf.uses_only(x->base()->alphabet())) {
            continue;
          }
          ++found;
          std::int64_t bound = max_b_index(nf);
          std::size_t  k     = static_cast<std::size_t>(std::max<std::int64_t>(0, bound + std::abs(m) + 2));
          out.expect(in_b_span(nf, allowed), name + " " + g.str() + " -> " + nf.str() + " outside the tail");
          out.expect(tail->truncation(k).member(nf), name + " " + nf.str() + " outside the truncation");
        }
        out.expect(found == 200, name + ": too few stable-free samples");
        normal += static_cast<std::size_t>(found);
      }
    }
    out.detail = "lemma51+lemma52 " + std::to_string(suite_samples) + " samples; " + std::to_string(accepted)
                 + " accepted with witnesses, " + std::to_string(rejected) + " rejected, "
                 + std::to_string(normal) + " stable-free normal forms in the tail";
    return out;
  }

  Outcome two_tail_example() {
    Outcome         out;
    std::mt19937_64 rng(54);
    std::string     counts;
    std::size_t     forward = 0, backward = 0;
    for (std::int64_t m : {0, 2}) {
      verify::SuiteParams p;
      p.m      = m;
      p.with_a = "both";
      auto rep = suite("example54", p, 200, 540 + static_cast<std::uint64_t>(m));
      out.expect(rep.ok() && rep.pass == 200, suite_summary(rep));

      auto ex   = gadgets::example_5_4(m);
      auto pres = presentation(ex.k);
      counts += (counts.empty() ? "" : ", ") + std::string("m=") + std::to_string(m) + ": "
                + std::to_string(pres.generators.size()) + " generators, " + std::to_string(pres.relators.size())
                + " relators";
      out.expect(ex.l->generators().size() == 4, "L_J generator count");
      out.expect(validate(ex.k).empty(), "K_J does not validate");

      Word u = Word::letter("u"), v = Word::letter("v");
      Word bu = w("b").conjugate(u), cu = w("c").conjugate(u), bv = w("b").conjugate(v), cv = w("c").conjugate(v);
      // b_i = b_i^u for i >= m and b_i^v for i <= -1, spelled over L_J's
      // generators
      auto spell = [&](std::int64_t i) {
        bool hi = i >= m;
        Word b = hi ? bu : bv, c = hi ? cu : cv;
        return c.pow(-i) * b * c.pow(i);
      };
      for (int n = 0; n < 100; ++n) {
        Word h, witness;
        for (std::size_t j = 1 + rng() % 3; j > 0; --j) {
          std::int64_t i = rng() % 2 ? m + static_cast<std::int64_t>(rng() % 8) : -1 - static_cast<std::int64_t>(rng() % 8);
          std::int64_t e = rng() % 2 ? 1 : -1;
          h *= b_index(i).pow(e);
          witness *= spell(i).pow(e);
        }
        out.expect(ex.h->member(h).is_yes(), "H rejects " + h.str());
        out.expect(equal(ex.k, witness, h).is_yes(), "witness for " + h.str());
        ++forward;
      }

      std::vector<Word> lj{bu, cu, bv, cv};
      auto in_h = [&](std::int64_t i) { return i >= m || i <= -1; };
      int  found = 0;
      for (int attempt = 0; found < 100 && attempt < 20000; ++attempt) {
        Word g;
        if (attempt % 2 == 0) {
          for (std::size_t j = 1 + rng() % 3; j > 0; --j) {
            std::int64_t i = rng() % 2 ? m + static_cast<std::int64_t>(rng() % 6) : -1 - static_cast<std::int64_t>(rng() % 6);
            g *= spell(i).pow(rng() % 2 ? 1 : -1);
          }
        } else {
          g = random_product(rng, lj, 6);
        }
        Word nf = normal_form(ex.k, g);
        if (!nf.uses_only(ex.g->alphabet())) {
          continue;
        }
        ++found;
        out.expect(in_b_span(nf, in_h), "L_J word " + g.str() + " -> " + nf.str() + " outside H");
        std::size_t k = static_cast<std::size_t>(max_b_index(nf) + m + 2);
        out.expect(ex.h->truncation(k).member(nf), nf.str() + " outside the truncation of H");
      }
      out.expect(found == 100, "too few stable-free L_J words");
      backward += static_cast<std::size_t>(found);
    }
    out.detail = counts + "; L_J has 4 generators; " + std::to_string(forward) + " H elements spelled in L_J, "
                 + std::to_string(backward) + " stable-free L_J words in H";
    return out;
  }

  Outcome remark_control() {
    Outcome out;
    auto    same = suite("remark48", {}, 100, 48);
    out.expect(same.ok() && same.pass == 100, suite_summary(same));
    verify::SuiteParams p;
    p.assoc  = {"b", "c"};
    auto neg = suite("remark48", p, 100, 48);
    out.expect(neg.fail > 0, "the <b>, <c> control found no nontrivial difference");
    out.detail = "G,G: pass=" + std::to_string(same.pass) + "/100; <b>,<c>: fail=" + std::to_string(neg.fail)
                 + "/100";
    return out;
  }

  Outcome free_product_cor() {
    Outcome             out;
    verify::SuiteParams p;
    p.assoc  = {"b", "c"};
    auto rep = suite("cor47", p, 200, 47);
    out.expect(rep.ok() && rep.pass == 200, suite_summary(rep));
    out.detail = "pass=" + std::to_string(rep.pass) + "/200";
    return out;
  }

  Outcome closure_vs_bounded() {
    Outcome         out;
    std::mt19937_64 rng(909);
    std::string     counts;
    for (std::int64_t m : {0, 1, 3}) {
      auto x       = gadgets::Xi(m);
      auto [t, tp] = gadgets::stable_names(m);
      for (Direction d : {Direction::Up, Direction::Down}) {
        bool              up     = d == Direction::Up;
        auto              exact  = gadgets::xi_closure(x, m, d);
        std::vector<Word> gens{b_index(up ? m : m - 1), Word::letter(t), Word::letter(tp)};
        auto              bound  = Subgroup::bounded(x, gens, {5, 100000});
        Word              outsider = b_index(up ? m - 1 : m);
        std::size_t       decided = 0, queries = 0;
        while (decided < 300 && queries < 3000) {
          ++queries;
          Word g = random_product(rng, gens, 4);
          if (rng() % 4 == 0) {
            g *= outsider;
          }
          auto vb = bound->member(g);
          auto ve = exact->member(g);
          out.expect(!vb.is_no(), "bounded search answered No");
          out.expect(!ve.is_unknown(), "stable closure undecided on " + g.str());
          if (vb.is_yes()) {
            ++decided;
            out.expect(ve.is_yes(), "m=" + std::to_string(m) + " " + g.str() + ": bounded Yes, closure " + ve.str());
            out.expect(equal(x, evaluate(vb.witness), g).is_yes(), "bounded witness for " + g.str());
          }
        }
        out.expect(decided >= 300, "fewer than 300 bounded verdicts");
        counts += (counts.empty() ? "" : ", ") + std::to_string(decided) + "/" + std::to_string(queries);
      }
    }
    out.detail = "bounded Yes / queries per scheme (Xi0, Xi1, Xi3 up and down): " + counts;
    return out;
  }

  Outcome determinism() {
    Outcome     out;
    std::size_t n = 0;
    for (auto const& name : verify::suite_names()) {
      verify::SuiteParams p;
      auto runs = std::vector<verify::VerificationReport>{suite(name, p, 60, 10, 1), suite(name, p, 60, 10, 4),
                                                          suite(name, p, 60, 10, 4)};
      for (auto& r : runs) {
        r.millis = 0;
      }
      out.expect(runs[0].to_json() == runs[1].to_json() && runs[1].to_json() == runs[2].to_json(), name);
      ++n;
    }
    verify::SuiteParams bad;
    bad.assoc  = {"b", "c"};
    auto a     = suite("remark48", bad, 60, 10, 1);
    auto b     = suite("remark48", bad, 60, 10, 4);
    a.millis   = b.millis = 0;
    out.expect(a.to_json() == b.to_json(), "remark48 counterexamples");
    out.detail = std::to_string(n) + " suites identical across jobs=1, jobs=4 and a repeat (millis zeroed)";
    return out;
  }

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"word-problem soundness", word_problem},
      {"intersection lemma", intersection_lemma},
      {"join lemma", join_lemma},
      {"tail subgroups in Xi and Theta", tail_lemmas},
      {"two-tail example", two_tail_example},
      {"conjugates by two letters", remark_control},
      {"free product of conjugates", free_product_cor},
      {"stable closure vs bounded search", closure_vs_bounded},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto    t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& e) {
      o.ok            = false;
      o.first_failure = std::string("exception: ") + e.what();
    }
    failed += o.ok ? 0 : 1;
    std::printf("[%s] %zu %s: %s (%.1f s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), seconds_since(t0));
    if (!o.ok) {
      std::printf("       first failure: %s\n", o.first_failure.c_str());
    }
    std::fflush(stdout);
  }
  return failed;
}
