#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fog/logic.hpp"

namespace fog {

// Bitset over D^n; tuple index is big-endian so index order is lexicographic.
class Table {
 public:
  Table() = default;
  Table(int arity, int dsize);
  int arity() const { return arity_; }
  size_t size() const { return bits_.size(); }
  size_t index(std::span<const int> tuple) const;
  std::vector<int> tuple(size_t index) const;
  bool get(std::span<const int> tuple) const { return bits_[index(tuple)]; }
  bool get(size_t i) const { return bits_[i]; }
  void set(std::span<const int> tuple, bool v = true) { bits_[index(tuple)] = v; }
  void set(size_t i, bool v) { bits_[i] = v; }
  size_t count() const;
  bool operator==(const Table& o) const { return arity_ == o.arity_ && bits_ == o.bits_; }

 private:
  int arity_ = 0;
  int dsize_ = 0;
  std::vector<uint8_t> bits_;
};

size_t ipow(size_t b, int e);

struct FiniteStructure {
  std::vector<std::string> domain;
  std::vector<std::optional<Table>> preds;            // by predicate id
  std::vector<std::optional<std::vector<int>>> funcs; // by function id, indexed like Table

  int size() const { return static_cast<int>(domain.size()); }
  bool has_pred(int p) const { return p < static_cast<int>(preds.size()) && preds[p].has_value(); }
  bool has_func(int f) const { return f < static_cast<int>(funcs.size()) && funcs[f].has_value(); }
  bool holds(int p, std::span<const int> tuple) const;
  int apply(int f, std::span<const int> tuple) const;
  std::optional<int> element(const std::string& name) const;
  void resize(const Vocabulary& voc);
};

// Value of each variable (-1: unassigned).
using Assignment = std::vector<int>;

int eval_term(const Term& t, const FiniteStructure& s, const Assignment& a);
bool evaluate(const Formula& f, const FiniteStructure& s, Assignment& a);
bool evaluate(const Formula& f, const FiniteStructure& s);  // sentences

// {x̄ | φ}: tuples in lexicographic domain order over the given variable order.
std::vector<std::vector<int>> answers(const std::vector<int>& vars, const Formula& f, const FiniteStructure& s);

enum class TV : uint8_t { F = 0, U = 1, T = 2 };
TV tv_not(TV v);
TV tv_and(TV a, TV b);
TV tv_or(TV a, TV b);
// precision order: u <=p t, u <=p f
bool leq_p(TV a, TV b);

struct TriTable {
  Table tru;
  Table fal;
  TV get(std::span<const int> tuple) const;
  TV get(size_t i) const { return tru.get(i) ? TV::T : (fal.get(i) ? TV::F : TV::U); }
};

struct ThreeValuedStructure {
  std::vector<std::string> domain;
  std::vector<std::optional<TriTable>> preds;
  std::vector<std::optional<std::vector<int>>> funcs;

  int size() const { return static_cast<int>(domain.size()); }
  bool two_valued() const;
  static ThreeValuedStructure from(const FiniteStructure& s);
  // unknown-everywhere table for predicate p of the given arity
  void set_unknown(int p, int arity);
  FiniteStructure to_two_valued() const;  // requires two_valued()
};

TV eval3(const Formula& f, const ThreeValuedStructure& s, Assignment& a);

enum class Precision { Less, Equal, Greater, Incomparable };
Precision compare_precision(const ThreeValuedStructure& a, const ThreeValuedStructure& b);

Assignment empty_assignment(const Theory& t);

}  // namespace fog
