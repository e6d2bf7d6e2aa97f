#include "fcw/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <thread>

#include <json.hpp>

#include "fcw/gadgets.hpp"
#include "fcw/rewrite.hpp"

namespace fcw::verify {

  using Rng  = std::mt19937_64;
  using Json = nlohmann::ordered_json;

  std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) {
    // splitmix64 over a mix of both inputs
    std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(index) + 0x632be59bd9b4e019ULL;
    z               = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z               = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::string VerificationReport::to_json(int indent) const {
    Json j;
    j["suite"]   = suite;
    j["params"]  = params.empty() ? Json::object() : Json::parse(params);
    j["samples"] = samples;
    j["seed"]    = seed;
    j["pass"]    = pass;
    j["fail"]    = fail;
    j["unknown"] = unknown;
    j["counterexamples"] = Json::array();
    for (auto const& c : counterexamples) {
      j["counterexamples"].push_back({{"input", c.input}, {"expected", c.expected}, {"got", c.got}});
    }
    j["millis"] = millis;
    return j.dump(indent);
  }

  namespace {

    ////////////////////////////////////////////////////////////////////
    // Sample outcomes
    ////////////////////////////////////////////////////////////////////

    struct Outcome {
      enum class Kind { Pass, Fail, Unknown };
      Kind           kind = Kind::Pass;
      Counterexample ce;

      bool passed() const noexcept { return kind == Kind::Pass; }
    };

    Outcome pass() {
      return {};
    }

    Outcome fail(std::string input, std::string expected, std::string got) {
      return {Outcome::Kind::Fail, {std::move(input), std::move(expected), std::move(got)}};
    }

    Outcome unknown(std::string input, std::string expected, std::string got) {
      return {Outcome::Kind::Unknown, {std::move(input), std::move(expected), std::move(got)}};
    }

    std::string kind_name(Verdict::Kind k) {
      switch (k) {
        case Verdict::Kind::Yes: return "Yes";
        case Verdict::Kind::No: return "No";
        case Verdict::Kind::Unknown: break;
      }
      return "Unknown";
    }

    Outcome expect(std::string const& input, Verdict::Kind want, Verdict const& got) {
      if (got.is_unknown()) {
        return unknown(input, kind_name(want), got.str());
      }
      if (got.kind != want) {
        return fail(input, kind_name(want), got.str());
      }
      return pass();
    }

#define FCW_CHECK(expr)         \
  do {                          \
    Outcome fcw_o_ = (expr);    \
    if (!fcw_o_.passed()) {     \
      return fcw_o_;            \
    }                           \
  } while (0)

    ////////////////////////////////////////////////////////////////////
    // Random words
    ////////////////////////////////////////////////////////////////////

    std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
      return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    }

    bool coin(Rng& rng, double p = 0.5) {
      return std::bernoulli_distribution(p)(rng);
    }

    template <class T>
    T const& pick(Rng& rng, std::vector<T> const& v) {
      return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(v.size()) - 1))];
    }

    //! Freely reduced word of exactly `len` letters.
    Word random_word_exact(Rng& rng, std::vector<Symbol> const& letters, std::size_t len) {
      Word         w;
      Symbol       last{};
      std::int64_t last_sign = 0;
      for (std::size_t i = 0; i < len; ++i) {
        Symbol       s;
        std::int64_t e;
        do {
          s = pick(rng, letters);
          e = coin(rng) ? 1 : -1;
        } while (last_sign != 0 && s == last && e == -last_sign);
        w.append(s, e);
        last      = s;
        last_sign = e;
      }
      return w;
    }

    Word random_word(Rng& rng, std::vector<Symbol> const& letters, std::size_t max_len, std::size_t min_len = 0) {
      auto len = static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(min_len), static_cast<std::int64_t>(max_len)));
      return random_word_exact(rng, letters, len);
    }

    //! Product of 1..max_k generators or their inverses; the identity for
    //! an empty list.
    Word random_product(Rng& rng, std::vector<Word> const& gens, std::size_t max_k) {
      Word w;
      if (gens.empty()) {
        return w;
      }
      auto k = uniform(rng, 1, static_cast<std::int64_t>(max_k));
      for (std::int64_t i = 0; i < k; ++i) {
        Word g = pick(rng, gens);
        w *= coin(rng) ? g : g.inverse();
      }
      return w;
    }

    Symbol sym(std::string_view name) {
      return Symbol::intern(name);
    }

    Word letter(std::string_view name, std::int64_t e = 1) {
      return Word::letter(sym(name), e);
    }

    std::string words_str(std::vector<Word> const& ws) {
      std::string out = "<";
      for (std::size_t i = 0; i < ws.size(); ++i) {
        out += (i ? ", " : "") + ws[i].str();
      }
      return out + ">";
    }

    bool uses_any_of(Word const& w, std::vector<Symbol> const& syms) {
      return w.uses_any(Alphabet(syms.begin(), syms.end()));
    }

    ////////////////////////////////////////////////////////////////////
    // Suites
    ////////////////////////////////////////////////////////////////////

    class Suite {
     public:
      virtual ~Suite()                                          = default;
      virtual Outcome run(Rng& rng, std::size_t index) const    = 0;
      Json            params;
    };

    std::vector<Word> assoc_generators(std::string const& key) {
      if (key == "b") {
        return {letter("b")};
      }
      if (key == "c") {
        return {letter("c")};
      }
      if (key == "bc2") {
        return {letter("b"), letter("c", 2)};
      }
      if (key == "G") {
        return {letter("b"), letter("c")};
      }
      throw Error("unknown associated subgroup '" + key + "' (expected b, c, bc2 or G)");
    }

    //! G = F(b, c) with t_i fixing A_i.
    struct MultiHnn {
      NodePtr                                g;
      std::vector<std::string>               keys;
      std::vector<std::vector<Word>>         full;  // A_i generators before mutation
      std::vector<SubgroupPtr>               a;
      std::vector<Symbol>                    t;
      NodePtr                                hnn;
      Word                                   by;  // t_1 ... t_r
      stallings::SubgroupAutomaton           meet;
      stallings::SubgroupAutomaton           join;
      std::vector<Word>                      join_gens;
      std::vector<std::size_t>               join_owner;
      std::vector<Symbol>                    base_letters;

      MultiHnn(SuiteParams const& p, std::size_t default_r, std::vector<std::string> default_keys) {
        std::size_t r = p.r.value_or(p.assoc.empty() ? default_r : p.assoc.size());
        if (r == 0) {
          throw Error("r must be at least 1");
        }
        keys = p.assoc.empty() ? default_keys : p.assoc;
        if (!p.assoc.empty() && p.assoc.size() != r) {
          throw Error("assoc lists " + std::to_string(p.assoc.size()) + " subgroups but r is "
                      + std::to_string(r));
        }
        while (keys.size() < r) {
          keys.push_back(default_keys[keys.size() % default_keys.size()]);
        }
        keys.resize(r);
        g            = gadgets::free_bc("G");
        base_letters = {sym("b"), sym("c")};
        Alphabet bc(base_letters.begin(), base_letters.end());
        std::vector<std::pair<std::string, SubgroupPtr>> letters;
        for (std::size_t i = 0; i < r; ++i) {
          auto gens = assoc_generators(keys[i]);
          full.push_back(gens);
          if (p.mutate && i == 0) {
            gens.erase(gens.begin());
          }
          a.push_back(Subgroup::free(g, gens, "A" + std::to_string(i + 1)));
          std::string ti = "t" + std::to_string(i + 1);
          t.push_back(sym(ti));
          by.append(t.back(), 1);
          letters.emplace_back(ti, a.back());
          for (auto const& w : full.back()) {
            join_gens.push_back(w);
            join_owner.push_back(i);
          }
        }
        hnn  = make_fixing_hnn("H", g, letters);
        meet = stallings::SubgroupAutomaton::build(bc, full[0]);
        for (std::size_t i = 1; i < r; ++i) {
          meet = stallings::intersect(meet, stallings::SubgroupAutomaton::build(bc, full[i]));
        }
        join = stallings::SubgroupAutomaton::build(bc, join_gens);
      }

      Json json() const {
        return Json{{"r", keys.size()}, {"assoc", keys}};
      }

      //! Word equal in the HNN-extension to g in J, as a product of
      //! conjugates a^(t_i) with a a generator of A_i.
      Word join_witness(Word const& g) const {
        auto wit = express_over(join.ambient(), join_gens, g);
        if (!wit) {
          throw Error("join witness requested for a non-member");
        }
        Word out;
        for (auto const& [w, e] : *wit) {
          auto it = std::find(join_gens.begin(), join_gens.end(), w);
          std::size_t k = static_cast<std::size_t>(it - join_gens.begin());
          out *= w.conjugate(Word::letter(t[join_owner[k]])).pow(e);
        }
        return out;
      }
    };

    Outcome guarded(std::function<Outcome()> const& body) {
      try {
        return body();
      } catch (UnsupportedMembership const& e) {
        return unknown("", "a verdict", e.what());
      } catch (std::exception const& e) {
        return fail("", "no error", e.what());
      }
    }

    // <G, t_1, ..., t_r> in the star equals the multiple HNN-extension
    class Lemma42 : public Suite {
     public:
      explicit Lemma42(SuiteParams const& p) : h_(p, 2, {"b", "c", "bc2"}), length_(p.length) {
        std::vector<gadgets::BenignPart> parts;
        for (auto const& a : h_.a) {
          parts.push_back({h_.g, a});
        }
        star_ = gadgets::benign_intersection(h_.g, parts).k;
        params = h_.json();
        params["length"] = length_;
        params["mutate"] = p.mutate;
        letters_ = h_.base_letters;
        letters_.insert(letters_.end(), h_.t.begin(), h_.t.end());
      }

      Outcome run(Rng& rng, std::size_t) const override {
        Word x = random_word(rng, letters_, length_ + 4);
        Word y = x;
        for (int k = 0; k < 2; ++k) {
          std::size_t i   = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(h_.t.size()) - 1));
          Word        a   = pick(rng, h_.full[i]);
          Word        rel = a.conjugate(Word::letter(h_.t[i])) * a.inverse();
          auto        pre = random_word(rng, letters_, 3);
          y = y * rel.conjugate(pre);
        }
        Word z = random_word(rng, letters_, length_ + 4);
        std::string in = "x=" + x.str() + " y=" + y.str() + " z=" + z.str();
        FCW_CHECK(expect(in + " (star x=y)", Verdict::Kind::Yes, equal(star_, x, y)));
        FCW_CHECK(expect(in + " (hnn x=y)", Verdict::Kind::Yes, equal(h_.hnn, x, y)));
        auto vs = equal(star_, x, z);
        auto vh = equal(h_.hnn, x, z);
        if (vs.is_unknown() || vh.is_unknown()) {
          return unknown(in, "verdicts", vs.str() + " / " + vh.str());
        }
        if (vs.kind != vh.kind) {
          return fail(in + " (x=z)", "star " + vh.str(), "star " + vs.str());
        }
        return pass();
      }

     private:
      MultiHnn            h_;
      std::size_t         length_;
      NodePtr             star_;
      std::vector<Symbol> letters_;
    };

    // G n G^(t_1...t_r) = I
    class Lemma43 : public Suite {
     public:
      explicit Lemma43(SuiteParams const& p) : h_(p, 2, {"b", "c", "bc2"}), length_(p.length) {
        params           = h_.json();
        params["length"] = length_;
        params["mutate"] = p.mutate;
      }

      Outcome run(Rng& rng, std::size_t) const override {
        Word g1 = random_product(rng, h_.meet.basis(), 3);
        std::string in1 = "g=" + g1.str() + " in I";
        FCW_CHECK(expect(in1, Verdict::Kind::Yes, is_trivial(h_.hnn, g1.inverse() * g1.conjugate(h_.by))));

        Word g2 = random_word(rng, h_.base_letters, length_, 1);
        std::string in2 = "g=" + g2.str();
        if (h_.meet.member(g2)) {
          return expect(in2 + " in I", Verdict::Kind::Yes, is_trivial(h_.hnn, g2.inverse() * g2.conjugate(h_.by)));
        }
        auto nf = britton_reduce(h_.hnn, g2.conjugate(h_.by));
        if (nf.tail.empty()) {
          return fail(in2 + " not in I", "a stable letter in the reduced form of g^(t1...tr)", nf.str());
        }
        return pass();
      }

     private:
      MultiHnn    h_;
      std::size_t length_;
    };

    // G n <G^t_1, ..., G^t_r> = J
    class Lemma44 : public Suite {
     public:
      explicit Lemma44(SuiteParams const& p) : h_(p, 2, {"b", "c", "bc2"}), length_(p.length) {
        std::vector<Word> gens;
        for (Symbol t : h_.t) {
          for (Symbol x : h_.base_letters) {
            gens.push_back(Word::letter(x).conjugate(Word::letter(t)));
          }
        }
        s_               = Subgroup::bounded(h_.hnn, gens, p.budget, "S");
        params           = h_.json();
        params["length"] = length_;
        params["mutate"] = p.mutate;
        params["depth"]  = p.budget.depth;
        params["max_ball"] = p.budget.max_ball;
      }

      Outcome run(Rng& rng, std::size_t) const override {
        Word g = coin(rng) ? random_product(rng, h_.join_gens, 4)
                           : random_word(rng, h_.base_letters, length_);
        std::string in = "g=" + g.str();
        if (h_.join.member(g)) {
          Word w = h_.join_witness(g);
          FCW_CHECK(expect(in + " in J, witness " + w.str(), Verdict::Kind::Yes,
                           is_trivial(h_.hnn, w * g.inverse())));
        } else {
          auto v = s_->member(g);
          if (v.is_yes()) {
            return fail(in + " not in J", "no witness in <G^t_i>", to_string(v.witness));
          }
        }

        // a product of conjugates that lands in G must lie in J
        Word q;
        auto k = uniform(rng, 1, 4);
        for (std::int64_t j = 0; j < k; ++j) {
          auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(h_.t.size()) - 1));
          Word a = coin(rng) ? random_product(rng, h_.full[i], 3) : random_word(rng, h_.base_letters, 3);
          q *= a.conjugate(Word::letter(h_.t[i]));
        }
        auto nf = britton_reduce(h_.hnn, q);
        if (nf.tail.empty() && !h_.join.member(nf.head)) {
          return fail("q=" + q.str(), "reduced form in J", nf.str());
        }
        return pass();
      }

     private:
      MultiHnn    h_;
      std::size_t length_;
      SubgroupPtr s_;
    };

    // I and J are benign: G n L_I = I, G n L_J = J in the star
    class Cor45 : public Suite {
     public:
      explicit Cor45(SuiteParams const& p) : h_(p, 2, {"b", "c", "bc2"}), length_(p.length) {
        std::vector<gadgets::BenignPart> parts;
        for (auto const& a : h_.a) {
          parts.push_back({h_.g, a});
        }
        auto bi = gadgets::benign_intersection(h_.g, parts);
        auto bj = gadgets::benign_join(h_.g, parts);
        ki_     = bi.k;
        kj_     = bj.k;
        li_     = bi.l;
        lj_     = Subgroup::bounded(bj.k, bj.l->generators(), p.budget, "LJ");
        params  = h_.json();
        params["length"]   = length_;
        params["mutate"]   = p.mutate;
        params["depth"]    = p.budget.depth;
        params["max_ball"] = p.budget.max_ball;
      }

      Outcome run(Rng& rng, std::size_t) const override {
        Word g = coin(rng) ? random_product(rng, h_.meet.basis(), 3)
                           : random_word(rng, h_.base_letters, length_);
        bool in_i = h_.meet.member(g);
        FCW_CHECK(expect("g=" + g.str() + " against L_I", in_i ? Verdict::Kind::Yes : Verdict::Kind::No,
                         li_->member(g)));

        Word j = coin(rng) ? random_product(rng, h_.join_gens, 4)
                           : random_word(rng, h_.base_letters, length_);
        std::string in = "g=" + j.str();
        if (h_.join.member(j)) {
          Word w = h_.join_witness(j);
          return expect(in + " in J, witness " + w.str(), Verdict::Kind::Yes, is_trivial(kj_, w * j.inverse()));
        }
        auto v = lj_->member(j);
        if (v.is_yes()) {
          return fail(in + " not in J", "no witness in L_J", to_string(v.witness));
        }
        return pass();
      }

     private:
      MultiHnn    h_;
      std::size_t length_;
      NodePtr     ki_;
      NodePtr     kj_;
      SubgroupPtr li_;
      SubgroupPtr lj_;
    };

    // <G^t_1, ..., G^t_r> is the free product of the G^t_i
    class Cor47 : public Suite {
     public:
      explicit Cor47(SuiteParams const& p) : h_(p, 2, {"b", "c"}), length_(p.length) {
        if (h_.t.size() < 2) {
          throw Error("cor47 needs r >= 2");
        }
        params           = h_.json();
        params["length"] = length_;
        params["mutate"] = p.mutate;
      }

      Outcome run(Rng& rng, std::size_t) const override {
        auto        k    = uniform(rng, 1, 6);
        auto        r    = static_cast<std::int64_t>(h_.t.size());
        std::size_t prev = h_.t.size();
        Word        w;
        for (std::int64_t j = 0; j < k; ++j) {
          std::size_t i;
          do {
            i = static_cast<std::size_t>(uniform(rng, 0, r - 1));
          } while (i == prev);
          prev = i;
          w *= random_word(rng, h_.base_letters, std::max<std::size_t>(length_ / 2, 1), 1)
                   .conjugate(Word::letter(h_.t[i]));
        }
        return expect("w=" + w.str(), Verdict::Kind::No, is_trivial(h_.hnn, w));
      }

     private:
      MultiHnn    h_;
      std::size_t length_;
    };

    // g^t_1 = g = g^t_2 when both letters fix all of G
    class Remark48 : public Suite {
     public:
      explicit Remark48(SuiteParams const& p) : h_(p, 2, {"G", "G"}), length_(p.length) {
        params           = h_.json();
        params["length"] = length_;
        params["mutate"] = p.mutate;
      }

      Outcome run(Rng& rng, std::size_t) const override {
        Word g = random_word(rng, h_.base_letters, length_, 1);
        Word d = g.conjugate(Word::letter(h_.t[0])) * g.conjugate(Word::letter(h_.t[1])).inverse();
        return expect("g=" + g.str(), Verdict::Kind::Yes, is_trivial(h_.hnn, d));
      }

     private:
      MultiHnn    h_;
      std::size_t length_;
    };

    //! 1-2 random generators whose subgroup meets each of `avoid`
    //! trivially; no generators if none is found.
    std::vector<Word> random_avoiding(Rng&                                              rng,
                                      std::vector<Symbol> const&                        letters,
                                      std::vector<stallings::SubgroupAutomaton> const& avoid) {
      Alphabet alpha(letters.begin(), letters.end());
      for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<Word> gens;
        auto              n = uniform(rng, 1, 2);
        for (std::int64_t i = 0; i < n; ++i) {
          gens.push_back(random_word(rng, letters, 5, 1));
        }
        auto aut = stallings::SubgroupAutomaton::build(alpha, gens);
        bool ok  = std::all_of(avoid.begin(), avoid.end(), [&](auto const& a) {
          return stallings::intersect(aut, a).rank() == 0;
        });
        if (ok) {
          return gens;
        }
      }
      return {};
    }

    // <G', H'> n G = G' and <G', H'> n H = H' in G *_phi H
    class Lemma31 : public Suite {
     public:
      explicit Lemma31(SuiteParams const& p) : length_(p.length) {
        g_    = make_free("G", {"b", "c"});
        h_    = make_free("H", {"d", "e"});
        gl_   = {sym("b"), sym("c")};
        hl_   = {sym("d"), sym("e")};
        a_    = {letter("b"), letter("c", 2)};
        b_    = {letter("d").conjugate(letter("e", -1)), letter("e", 2)};
        phi_  = std::make_shared<stallings::Morphism>(Alphabet{sym("b"), sym("c"), sym("d"), sym("e")}, a_, b_);
        gamma_ = make_amalgam("Gamma", g_, h_, Subgroup::free(g_, a_, "A"), Subgroup::free(h_, b_, "B"), *phi_);
        params = Json{{"A", words_str(a_)}, {"B", words_str(b_)}, {"length", length_}};
      }

      Outcome run(Rng& rng, std::size_t index) const override {
        std::vector<Word> gp, hp;
        if (index % 2 == 0) {
          gp = random_avoiding(rng, gl_, {stallings::SubgroupAutomaton::build(Alphabet(gl_.begin(), gl_.end()), a_)});
          hp = random_avoiding(rng, hl_, {stallings::SubgroupAutomaton::build(Alphabet(hl_.begin(), hl_.end()), b_)});
        } else {
          gp = a_;
          gp.push_back(random_word(rng, gl_, 4, 1));
          hp = b_;
          hp.push_back(random_word(rng, hl_, 4, 1));
        }
        auto gs  = Subgroup::free(g_, gp, "G'");
        auto hs  = Subgroup::free(h_, hp, "H'");
        auto cl  = Subgroup::amalgam_closure(gamma_, gs, hs, "Gamma'");
        auto ctx = "G'=" + words_str(gp) + " H'=" + words_str(hp);

        Word p = random_product(rng, gp, 3);
        FCW_CHECK(expect(ctx + " g=" + p.str(), Verdict::Kind::Yes, cl->member(p)));

        Word g = random_word(rng, gl_, length_);
        if (coin(rng)) {
          g = random_product(rng, gp, 2) * random_product(rng, a_, 2);
        }
        FCW_CHECK(expect(ctx + " g=" + g.str(), gs->member(g).kind, cl->member(g)));
        Word h = random_word(rng, hl_, length_);
        if (coin(rng)) {
          h = random_product(rng, hp, 2) * random_product(rng, b_, 2);
        }
        FCW_CHECK(expect(ctx + " h=" + h.str(), hs->member(h).kind, cl->member(h)));

        std::vector<Word> both = gp;
        both.insert(both.end(), hp.begin(), hp.end());
        Word q  = random_product(rng, both, 4);
        auto nf = amalgam_reduce(gamma_, q);
        if (nf.tail.empty()) {
          return expect(ctx + " q=" + q.str(), Verdict::Kind::Yes, gs->member(nf.head));
        }
        if (nf.tail.size() == 1) {
          if (nf.tail[0].side == 0) {
            return expect(ctx + " q=" + q.str(), Verdict::Kind::Yes, gs->member(nf.head * nf.tail[0].l));
          }
          return expect(ctx + " q=" + q.str(), Verdict::Kind::Yes, hs->member(phi_->apply(nf.head) * nf.tail[0].l));
        }
        return pass();
      }

     private:
      std::size_t                          length_;
      NodePtr                              g_, h_, gamma_;
      std::vector<Symbol>                  gl_, hl_;
      std::vector<Word>                    a_, b_;
      std::shared_ptr<stallings::Morphism> phi_;
    };

    // <G', t> n G = G' in G *_phi t
    class Lemma33 : public Suite {
     public:
      explicit Lemma33(SuiteParams const& p) : length_(p.length) {
        g_  = make_free("G", {"b", "c"});
        gl_ = {sym("b"), sym("c")};
        a_  = {letter("b"), letter("c", 2)};
        b_  = {letter("b").conjugate(letter("c")), letter("c", 2)};
        t_  = sym("t");
        stallings::Morphism phi(Alphabet{sym("b"), sym("c")}, a_, b_);
        gamma_ = make_hnn("Gamma", g_, {{t_, Subgroup::free(g_, a_, "A"), Subgroup::free(g_, b_, "B"), phi}});
        Alphabet bc(gl_.begin(), gl_.end());
        avoid_ = {stallings::SubgroupAutomaton::build(bc, a_), stallings::SubgroupAutomaton::build(bc, b_)};
        params = Json{{"A", words_str(a_)}, {"B", words_str(b_)}, {"length", length_}};
      }

      Outcome run(Rng& rng, std::size_t index) const override {
        std::vector<Word> gp;
        if (index % 2 == 0) {
          gp = random_avoiding(rng, gl_, avoid_);
        } else {
          gp = a_;
          gp.insert(gp.end(), b_.begin(), b_.end());
          gp.push_back(random_word(rng, gl_, 4, 1));
        }
        auto gs  = Subgroup::free(g_, gp, "G'");
        auto ctx = "G'=" + words_str(gp);
        if (!verify_compatibility(gs, gamma_)) {
          return fail(ctx, "phi(A') = B'", "incompatible sample");
        }
        auto cl = Subgroup::stable_closure(gamma_, gs, {t_}, {}, "Gamma'");

        Word p = random_product(rng, gp, 3);
        FCW_CHECK(expect(ctx + " g=" + p.str(), Verdict::Kind::Yes, cl->member(p)));

        Word g = random_word(rng, gl_, length_);
        if (coin(rng)) {
          g = random_product(rng, gp, 2) * random_product(rng, coin(rng) ? a_ : b_, 2);
        }
        FCW_CHECK(expect(ctx + " g=" + g.str(), gs->member(g).kind, cl->member(g)));

        Word q;
        auto k = uniform(rng, 1, 3);
        for (std::int64_t j = 0; j < k; ++j) {
          Word x = random_product(rng, gp, 2);
          q *= coin(rng) ? x : x.conjugate(Word::letter(t_, coin(rng) ? 1 : -1));
        }
        auto nf = britton_reduce(gamma_, q);
        if (nf.tail.empty()) {
          return expect(ctx + " q=" + q.str(), Verdict::Kind::Yes, gs->member(nf.head));
        }
        return pass();
      }

     private:
      std::size_t                               length_;
      NodePtr                                   g_, gamma_;
      std::vector<Symbol>                       gl_;
      std::vector<Word>                         a_, b_;
      Symbol                                    t_;
      std::vector<stallings::SubgroupAutomaton> avoid_;
    };

    std::vector<gadgets::Direction> directions(std::string const& dir) {
      if (dir == "up") {
        return {gadgets::Direction::Up};
      }
      if (dir == "down") {
        return {gadgets::Direction::Down};
      }
      if (dir == "both") {
        return {gadgets::Direction::Up, gadgets::Direction::Down};
      }
      throw Error("dir must be up, down or both");
    }

    std::int64_t tail_first(std::int64_t m, gadgets::Direction d) {
      return d == gadgets::Direction::Up ? m : m - 1;
    }

    //! i-th index inside the tail (i >= 0), or outside it for i < 0.
    std::int64_t tail_index(std::int64_t m, gadgets::Direction d, std::int64_t i) {
      return d == gadgets::Direction::Up ? m + i : m - 1 - i;
    }

    //! Products of conjugates of seed^(+-1) by short words in the stable
    //! letters (mostly positive ones, which land back in the base).
    Word random_closure_word(Rng& rng, Word const& seed, std::vector<Symbol> const& stable, std::vector<Word> const& extra) {
      Word w;
      auto k = uniform(rng, 1, 3);
      for (std::int64_t j = 0; j < k; ++j) {
        if (!extra.empty() && coin(rng, 0.25)) {
          w *= pick(rng, extra).pow(coin(rng) ? 1 : -1);
          continue;
        }
        Word by;
        bool positive = coin(rng, 0.7);
        auto len      = uniform(rng, 0, 3);
        for (std::int64_t i = 0; i < len; ++i) {
          by.append(pick(rng, stable), positive || coin(rng) ? 1 : -1);
        }
        w *= seed.pow(coin(rng) ? 1 : -1).conjugate(by);
      }
      return w;
    }

    //! Membership of a base word in a stream, decided on the truncation
    //! covering the b-indices it involves.
    Verdict truncated_member(SubgroupPtr const& stream, Word const& w) {
      auto const& s  = *stream->stream_data();
      auto        ix = s.index_range(w);
      std::size_t k  = ix ? s.cover(ix->first, ix->second) : 1;
      return stream->truncation(k).member(w) ? Verdict::yes() : Verdict::no();
    }

    // <b, c> n <b_m, t_m, t'_m> = <b_m, b_m+1, ...>, and the descending twin
    class Lemma51 : public Suite {
     public:
      explicit Lemma51(SuiteParams const& p) : m_(p.m.value_or(3)), dirs_(directions(p.dir)) {
        xi_ = gadgets::Xi(m_);
        auto [t, tp] = gadgets::stable_names(m_);
        stable_      = {sym(t), sym(tp)};
        for (auto d : dirs_) {
          closure_.push_back(gadgets::xi_closure(xi_, m_, d));
          tail_.push_back(gadgets::tail_subgroup(xi_->base(), m_, d));
        }
        params = Json{{"m", m_}, {"dir", p.dir}};
      }

      Outcome run(Rng& rng, std::size_t index) const override {
        std::size_t which = index % dirs_.size();
        auto        d     = dirs_[which];
        auto const& l     = closure_[which];
        auto const& tail  = tail_[which];
        auto        j     = static_cast<std::int64_t>(index / dirs_.size());

        std::int64_t i  = tail_index(m_, d, j % 13);
        Word         bi = gadgets::b_index(i);
        auto         v  = l->member(bi);
        FCW_CHECK(expect("b_" + std::to_string(i), Verdict::Kind::Yes, v));
        FCW_CHECK(expect("b_" + std::to_string(i) + " member witness " + to_string(v.witness), Verdict::Kind::Yes,
                         equal(xi_, evaluate(v.witness), bi)));
        Word tw = gadgets::tail_witness(i, m_, d);
        FCW_CHECK(expect("b_" + std::to_string(i) + " tail witness " + tw.str(), Verdict::Kind::Yes,
                         equal(xi_, tw, bi)));

        std::int64_t o = tail_index(m_, d, -1 - j % 5);
        FCW_CHECK(expect("b_" + std::to_string(o), Verdict::Kind::No, l->member(gadgets::b_index(o))));

        Word seed = gadgets::b_index(tail_first(m_, d));
        for (int attempt = 0; attempt < 100; ++attempt) {
          Word w  = random_closure_word(rng, seed, stable_, {});
          Word nf = normal_form(xi_, w);
          if (uses_any_of(nf, stable_)) {
            continue;
          }
          return expect("w=" + w.str() + " nf=" + nf.str(), Verdict::Kind::Yes, truncated_member(tail, nf));
        }
        return unknown("b_" + std::to_string(i), "a stable-letter-free closure word", "none in 100 draws");
      }

     private:
      std::int64_t                    m_;
      std::vector<gadgets::Direction> dirs_;
      NodePtr                         xi_;
      std::vector<Symbol>             stable_;
      std::vector<SubgroupPtr>        closure_;
      std::vector<SubgroupPtr>        tail_;
    };

    // <a, b, c> n <a, b_m, t_m, t'_m> = <a, b_m, b_m+1, ...> in <a> * Xi_m
    class Lemma52 : public Suite {
     public:
      explicit Lemma52(SuiteParams const& p)
          : m_(p.m.value_or(3)), dirs_(directions(p.dir)), length_(p.length) {
        theta_       = gadgets::Theta(m_);
        g_           = make_free("G", {"a", "b", "c"});
        letters_     = {sym("a"), sym("b"), sym("c")};
        auto [t, tp] = gadgets::stable_names(m_);
        stable_      = {sym(t), sym(tp)};
        for (auto d : dirs_) {
          closure_.push_back(gadgets::theta_closure(theta_, m_, d));
          auto s = gadgets::tail_stream(m_, d);
          s.fixed.push_back(letter("a"));
          s.description = "<a> * " + s.description;
          stream_.push_back(Subgroup::stream(g_, std::move(s), "aT"));
        }
        params = Json{{"m", m_}, {"dir", p.dir}, {"length", length_}};
      }

      Outcome run(Rng& rng, std::size_t index) const override {
        std::size_t which  = index % dirs_.size();
        auto        d      = dirs_[which];
        auto const& l      = closure_[which];
        auto const& stream = stream_[which];

        Word h;
        auto k = uniform(rng, 1, 3);
        for (std::int64_t j = 0; j < k; ++j) {
          Word f = coin(rng, 0.3) ? letter("a") : gadgets::b_index(tail_index(m_, d, uniform(rng, 0, 12)));
          h *= f.pow(coin(rng) ? 1 : -1);
        }
        auto v = l->member(h);
        FCW_CHECK(expect("h=" + h.str(), Verdict::Kind::Yes, v));
        FCW_CHECK(expect("h=" + h.str() + " witness " + to_string(v.witness), Verdict::Kind::Yes,
                         equal(theta_, evaluate(v.witness), h)));

        std::int64_t o = tail_index(m_, d, -uniform(rng, 1, 5));
        Word         x = letter("a", uniform(rng, 0, 2)) * gadgets::b_index(o);
        FCW_CHECK(expect("x=" + x.str(), Verdict::Kind::No, l->member(x)));

        Word g = random_word(rng, letters_, length_);
        FCW_CHECK(expect("g=" + g.str(), stream->member(g).kind, l->member(g)));

        Word seed = gadgets::b_index(tail_first(m_, d));
        for (int attempt = 0; attempt < 100; ++attempt) {
          Word w  = random_closure_word(rng, seed, stable_, {letter("a")});
          Word nf = normal_form(theta_, w);
          if (uses_any_of(nf, stable_)) {
            continue;
          }
          return expect("w=" + w.str() + " nf=" + nf.str(), Verdict::Kind::Yes, truncated_member(stream, nf));
        }
        return unknown("h=" + h.str(), "a stable-letter-free closure word", "none in 100 draws");
      }

     private:
      std::int64_t                    m_;
      std::vector<gadgets::Direction> dirs_;
      std::size_t                     length_;
      NodePtr                         theta_, g_;
      std::vector<Symbol>             letters_, stable_;
      std::vector<SubgroupPtr>        closure_;
      std::vector<SubgroupPtr>        stream_;
    };

    // H = <..., b_-2, b_-1; b_m, b_m+1, ...> is benign via K_J and L_J
    class Example54 : public Suite {
     public:
      explicit Example54(SuiteParams const& p) : m_(p.m.value_or(2)) {
        if (p.with_a != "no") {
          variants_.push_back(gadgets::example_5_4(m_, true));
        }
        if (p.with_a != "yes") {
          variants_.insert(variants_.begin(), gadgets::example_5_4(m_, false));
        }
        if (p.with_a != "no" && p.with_a != "yes" && p.with_a != "both") {
          throw Error("with_a must be no, yes or both");
        }
        u_      = sym("u");
        v_      = sym("v");
        params  = Json{{"m", m_}, {"with_a", p.with_a}};
      }

      Outcome run(Rng& rng, std::size_t index) const override {
        auto const& w      = variants_[index % variants_.size()];
        bool        with_a = w.g->alphabet().contains(sym("a"));
        Alphabet    base   = w.g->alphabet();

        // an element of H and its L_J witness
        Word h, wit;
        auto k = uniform(rng, 1, 3);
        for (std::int64_t j = 0; j < k; ++j) {
          auto e = coin(rng) ? 1 : -1;
          if (with_a && coin(rng, 0.25)) {
            h *= letter("a", e);
            wit *= letter("a", e);
            continue;
          }
          bool         up = coin(rng);
          std::int64_t i  = up ? m_ + uniform(rng, 0, 8) : -uniform(rng, 1, 8);
          Word         bi = gadgets::b_index(i).pow(e);
          h *= bi;
          wit *= bi.conjugate(Word::letter(up ? u_ : v_));
        }
        FCW_CHECK(expect("h=" + h.str() + " witness " + wit.str(), Verdict::Kind::Yes, equal(w.k, wit, h)));

        // L_J words that land in G lie in H
        for (int attempt = 0; attempt < 100; ++attempt) {
          Word q;
          auto n = uniform(rng, 1, 3);
          for (std::int64_t j = 0; j < n; ++j) {
            auto e = coin(rng) ? 1 : -1;
            if (with_a && coin(rng, 0.2)) {
              q *= letter("a", e);
              continue;
            }
            bool by_u = coin(rng);
            Word x    = coin(rng, 0.1) ? letter("c", uniform(rng, 1, 2) * e)
                                       : gadgets::b_index(by_u ? uniform(rng, m_ - 4, m_ + 6) : uniform(rng, -6, 3)).pow(e);
            q *= x.conjugate(Word::letter(by_u ? u_ : v_));
          }
          Word nf = normal_form(w.k, q);
          if (!nf.uses_only(base)) {
            continue;
          }
          return expect("q=" + q.str() + " nf=" + nf.str(), Verdict::Kind::Yes, truncated_member(w.h, nf));
        }
        return unknown("h=" + h.str(), "an L_J word landing in G", "none in 100 draws");
      }

     private:
      std::int64_t                        m_;
      std::vector<gadgets::BenignWitness> variants_;
      Symbol                              u_, v_;
    };

    using Factory = std::function<std::unique_ptr<Suite>(SuiteParams const&)>;

    template <class S>
    Factory factory() {
      return [](SuiteParams const& p) { return std::make_unique<S>(p); };
    }

    std::vector<std::pair<std::string, Factory>> const& registry() {
      static std::vector<std::pair<std::string, Factory>> const r{
          {"lemma31", factory<Lemma31>()},   {"lemma33", factory<Lemma33>()},
          {"lemma42", factory<Lemma42>()},   {"lemma43", factory<Lemma43>()},
          {"lemma44", factory<Lemma44>()},   {"cor45", factory<Cor45>()},
          {"cor47", factory<Cor47>()},       {"remark48", factory<Remark48>()},
          {"lemma51", factory<Lemma51>()},   {"lemma52", factory<Lemma52>()},
          {"example54", factory<Example54>()},
      };
      return r;
    }

    constexpr std::size_t kMaxCounterexamples = 25;

  }  // namespace

  std::vector<std::string> const& suite_names() {
    static std::vector<std::string> const names = [] {
      std::vector<std::string> out;
      for (auto const& [name, f] : registry()) {
        out.push_back(name);
      }
      return out;
    }();
    return names;
  }

  VerificationReport run_suite(std::string const& suite,
                               SuiteParams const& params,
                               std::size_t        samples,
                               std::uint64_t      seed,
                               std::size_t        jobs) {
    auto const& reg = registry();
    auto        it  = std::find_if(reg.begin(), reg.end(), [&](auto const& e) { return e.first == suite; });
    if (it == reg.end()) {
      throw Error("unknown suite '" + suite + "'");
    }
    auto start = std::chrono::steady_clock::now();
    auto s     = it->second(params);

    std::vector<Outcome>     outcomes(samples);
    std::atomic<std::size_t> next{0};
    auto                     worker = [&] {
      for (std::size_t i = next++; i < samples; i = next++) {
        Rng rng(sample_seed(seed, i));
        outcomes[i] = guarded([&] { return s->run(rng, i); });
      }
    };
    jobs = std::max<std::size_t>(1, std::min(jobs, samples));
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t j = 0; j < jobs; ++j) {
        pool.emplace_back(worker);
      }
    }

    VerificationReport rep;
    rep.suite   = suite;
    rep.params  = s->params.dump();
    rep.samples = samples;
    rep.seed    = seed;
    for (std::size_t i = 0; i < samples; ++i) {
      auto& o = outcomes[i];
      switch (o.kind) {
        case Outcome::Kind::Pass: ++rep.pass; continue;
        case Outcome::Kind::Fail: ++rep.fail; break;
        case Outcome::Kind::Unknown: ++rep.unknown; break;
      }
      if (rep.counterexamples.size() < kMaxCounterexamples) {
        o.ce.input = "sample " + std::to_string(i) + (o.ce.input.empty() ? "" : ": " + o.ce.input);
        rep.counterexamples.push_back(std::move(o.ce));
      }
    }
    rep.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return rep;
  }

}  // namespace fcw::verify
