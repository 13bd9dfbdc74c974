#include "dysongraph/hopf.hpp"

#include "dysongraph/errors.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace dysongraph {

// ---- TensorSum --------------------------------------------------------------

TensorSum::TensorSum(const Forest& left, const Forest& right, const Rational& coef) { add(left, right, coef); }

Rational TensorSum::coefficient(const Forest& left, const Forest& right) const {
    auto it = terms_.find({left, right});
    return it == terms_.end() ? Rational(0) : it->second;
}

void TensorSum::add(const Forest& left, const Forest& right, const Rational& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(Key{left, right}, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
}

TensorSum& TensorSum::operator+=(const TensorSum& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
}

TensorSum& TensorSum::operator-=(const TensorSum& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
}

TensorSum& TensorSum::operator*=(const Rational& s) {
    if (s == 0) terms_.clear();
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

TensorSum operator*(const TensorSum& a, const TensorSum& b) {
    TensorSum out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) out.add(ka.first * kb.first, ka.second * kb.second, ca * cb);
    return out;
}

TensorSum tensor(const ForestSum& a, const ForestSum& b) {
    TensorSum out;
    for (const auto& [fa, ca] : a.terms())
        for (const auto& [fb, cb] : b.terms()) out.add(fa, fb, ca * cb);
    return out;
}

TensorSum map_factors(const TensorSum& t, const std::function<ForestSum(const Forest&)>& left,
                      const std::function<ForestSum(const Forest&)>& right) {
    TensorSum out;
    for (const auto& [k, c] : t.terms()) {
        TensorSum piece = tensor(left(k.first), right(k.second));
        piece *= c;
        out += piece;
    }
    return out;
}

TensorSum flip(const TensorSum& t) {
    TensorSum out;
    for (const auto& [k, c] : t.terms()) out.add(k.second, k.first, c);
    return out;
}

std::string to_string(const TensorSum& t) {
    if (t.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : t.terms()) {
        if (!first) out += " + ";
        first = false;
        if (c != 1) out += to_string(c) + "*";
        out += to_string(k.first) + " (x) " + to_string(k.second);
    }
    return out;
}

// ---- caches -----------------------------------------------------------------

namespace {

template <class Value>
class ConcurrentMemo {
public:
    std::optional<Value> find(const std::string& key) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    // Values are deterministic, so a racing writer stores an identical value.
    void store(const std::string& key, const Value& value) {
        std::unique_lock lock(mutex_);
        map_.insert_or_assign(key, value);
    }
    void clear() {
        std::unique_lock lock(mutex_);
        map_.clear();
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, Value> map_;
};

using CutMap = std::map<std::pair<RootedTree, Forest>, Integer>;

ConcurrentMemo<CutMap>& cut_memo() {
    static ConcurrentMemo<CutMap> memo;
    return memo;
}

ConcurrentMemo<ForestSum>& antipode_memo() {
    static ConcurrentMemo<ForestSum> memo;
    return memo;
}

}  // namespace

void clear_hopf_caches() {
    cut_memo().clear();
    antipode_memo().clear();
}

// ---- coproduct ------------------------------------------------------------

CutMap admissible_cuts(const RootedTree& tree) {
    if (auto hit = cut_memo().find(tree.encoding())) return *hit;

    // (kept children, pruned forest) -> multiplicity
    std::map<std::pair<Forest, Forest>, Integer> states{{{Forest{}, Forest{}}, 1}};
    for (const auto& child : tree.children()) {
        const CutMap below = admissible_cuts(child);
        std::map<std::pair<Forest, Forest>, Integer> next;
        for (const auto& [state, count] : states) {
            // cut the edge above this child
            next[{state.first, state.second * Forest(child)}] += count;
            // keep the edge, cut admissibly inside the child
            for (const auto& [cut, mult] : below)
                next[{state.first * Forest(cut.first), state.second * cut.second}] += count * mult;
        }
        states = std::move(next);
    }

    CutMap cuts;
    const Decoration root(tree.label());
    for (const auto& [state, count] : states) cuts[{RootedTree(root, state.first.trees()), state.second}] += count;
    cut_memo().store(tree.encoding(), cuts);
    return cuts;
}

TensorSum coproduct(const RootedTree& tree) {
    TensorSum out(Forest{}, Forest(tree));
    for (const auto& [cut, mult] : admissible_cuts(tree)) out.add(Forest(cut.first), cut.second, Rational(mult));
    return out;
}

TensorSum coproduct(const Forest& forest) {
    TensorSum out(Forest{}, Forest{});
    for (const auto& t : forest.trees()) out = out * coproduct(t);
    return out;
}

TensorSum coproduct(const ForestSum& x) {
    TensorSum out;
    for (const auto& [f, c] : x.terms()) {
        TensorSum piece = coproduct(f);
        piece *= c;
        out += piece;
    }
    return out;
}

TensorSum reduced_coproduct(const ForestSum& x) {
    TensorSum out;
    for (const auto held = coproduct(x); const auto& [k, c] : held.terms())
        if (!k.first.empty() && !k.second.empty()) out.add(k.first, k.second, c);
    return out;
}

Rational counit(const ForestSum& x) { return x.coefficient(Forest{}); }

// ---- antipode -------------------------------------------------------------

ForestSum antipode(const RootedTree& tree) {
    if (auto hit = antipode_memo().find(tree.encoding())) return *hit;
    // S(t) = -t - sum S(t') t''
    ForestSum s(tree, -1);
    for (const auto& [cut, mult] : admissible_cuts(tree)) {
        if (cut.second.empty()) continue;  // empty cut is the t (x) 1 term
        ForestSum piece = antipode(Forest(cut.first)) * ForestSum(cut.second);
        piece *= Rational(-mult);
        s += piece;
    }
    antipode_memo().store(tree.encoding(), s);
    return s;
}

ForestSum antipode(const Forest& forest) {
    ForestSum out = ForestSum::unit();
    for (const auto& t : forest.trees()) out = out * antipode(t);
    return out;
}

ForestSum antipode(const ForestSum& x) {
    ForestSum out;
    for (const auto& [f, c] : x.terms()) out += antipode(f) * c;
    return out;
}

ForestSum graft(const Decoration& d, const ForestSum& x) {
    ForestSum out;
    for (const auto& [f, c] : x.terms()) out.add(Forest(RootedTree(d, f.trees())), c);
    return out;
}

ForestSum multiply(const TensorSum& t) {
    ForestSum out;
    for (const auto& [k, c] : t.terms()) out.add(k.first * k.second, c);
    return out;
}

// ---- characters -----------------------------------------------------------

CharValue unit_value(Target target) {
    if (target == Target::scalar) return Rational(1);
    return LaurentSeries(Rational(1));
}

CharValue zero_value(Target target) {
    if (target == Target::scalar) return Rational(0);
    return LaurentSeries{};
}

Target target_of(const CharValue& v) { return std::holds_alternative<Rational>(v) ? Target::scalar : Target::laurent; }

CharValue add_values(const CharValue& a, const CharValue& b) {
    if (target_of(a) != target_of(b)) throw MismatchError("adding values from different target algebras");
    if (auto* r = std::get_if<Rational>(&a)) return Rational(*r + std::get<Rational>(b));
    return std::get<LaurentSeries>(a) + std::get<LaurentSeries>(b);
}

CharValue multiply_values(const CharValue& a, const CharValue& b) {
    if (target_of(a) != target_of(b)) throw MismatchError("multiplying values from different target algebras");
    if (auto* r = std::get_if<Rational>(&a)) return Rational(*r * std::get<Rational>(b));
    return std::get<LaurentSeries>(a) * std::get<LaurentSeries>(b);
}

CharValue scale_value(const CharValue& a, const Rational& s) {
    if (auto* r = std::get_if<Rational>(&a)) return Rational(*r * s);
    return std::get<LaurentSeries>(a) * s;
}

struct Character::Memo {
    ConcurrentMemo<CharValue> values;
};

Character::Character(Target target, Rule rule)
    : target_(target), rule_(std::move(rule)), memo_(std::make_shared<Memo>()) {}

CharValue Character::operator()(const RootedTree& tree) const {
    if (auto hit = memo_->values.find(tree.encoding())) return *hit;
    CharValue v = rule_(tree);
    if (target_of(v) != target_) throw MismatchError("character rule returned a value outside its target algebra");
    memo_->values.store(tree.encoding(), v);
    return v;
}

CharValue Character::operator()(const Forest& forest) const {
    CharValue acc = unit_value(target_);
    for (const auto& t : forest.trees()) acc = multiply_values(acc, (*this)(t));
    return acc;
}

CharValue Character::operator()(const ForestSum& x) const {
    CharValue acc = zero_value(target_);
    for (const auto& [f, c] : x.terms()) acc = add_values(acc, scale_value((*this)(f), c));
    return acc;
}

Character Character::counit(Target target) {
    return Character(target, [target](const RootedTree&) { return zero_value(target); });
}

Character compose_antipode(const Character& phi) {
    return Character(phi.target(), [phi](const RootedTree& t) { return phi(antipode(t)); });
}

CharValue convolve(const Character& f, const Character& g, const ForestSum& x) {
    if (f.target() != g.target()) throw MismatchError("convolution of characters with different target algebras");
    CharValue acc = zero_value(f.target());
    for (const auto held = coproduct(x); const auto& [k, c] : held.terms())
        acc = add_values(acc, scale_value(multiply_values(f(k.first), g(k.second)), c));
    return acc;
}

}  // namespace dysongraph
