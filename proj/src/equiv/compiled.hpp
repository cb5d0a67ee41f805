#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svagen/equiv.hpp"

namespace svagen::equiv::detail {

inline constexpr int kHorizon = 256;

/// Fixed-width set of cycle positions [0, kHorizon).
class PosSet {
 public:
  static constexpr int kWords = kHorizon / 64;

  static PosSet single(int p) {
    PosSet s;
    s.set(p);
    return s;
  }
  /// Low 64 positions from `bits`.
  static PosSet low(std::uint64_t bits) {
    PosSet s;
    s.w_[0] = bits;
    return s;
  }
  /// Every position >= p.
  static PosSet from(int p);

  void set(int p) {
    if (p >= 0 && p < kHorizon) w_[p >> 6] |= std::uint64_t{1} << (p & 63);
  }
  bool test(int p) const {
    return p >= 0 && p < kHorizon && ((w_[p >> 6] >> (p & 63)) & 1u);
  }
  bool any() const { return (w_[0] | w_[1] | w_[2] | w_[3]) != 0; }
  bool none() const { return !any(); }
  /// Smallest member >= p, or -1.
  int next(int p) const;
  int first() const { return next(0); }
  int last() const;

  PosSet shifted(int k) const;  // every member + k, dropping overflow

  PosSet& operator|=(const PosSet& o) {
    for (int i = 0; i < kWords; ++i) w_[i] |= o.w_[i];
    return *this;
  }
  PosSet& operator&=(const PosSet& o) {
    for (int i = 0; i < kWords; ++i) w_[i] &= o.w_[i];
    return *this;
  }
  friend PosSet operator|(PosSet a, const PosSet& b) { return a |= b; }
  friend PosSet operator&(PosSet a, const PosSet& b) { return a &= b; }
  PosSet operator~() const {
    PosSet s;
    for (int i = 0; i < kWords; ++i) s.w_[i] = ~w_[i];
    return s;
  }
  bool operator==(const PosSet&) const = default;

 private:
  std::array<std::uint64_t, kWords> w_{};
};

/// A unit body flattened in post-order and evaluated with bit-parallel masks.
/// Each instance owns scratch space; copy one per thread.
class CompiledProperty {
 public:
  /// `signals` fixes the mask order expected by load(); `length` is L.
  CompiledProperty(const AstNode& body, const std::vector<std::string>& signals, int length);

  /// Per-signal cycle masks (bit c = value at cycle c).
  void load(std::span<const std::uint64_t> signal_masks);

  /// Bit t (t < end) set when the property holds at start t; bit `end` is the
  /// verdict for every start at or beyond `end`.
  std::uint64_t holds(Pad pad, int end);

  PosSet ends(const PosSet& starts, Pad pad, int end);

  /// Max cycle any evaluation may touch; kept below kHorizon.
  int horizon() const { return horizon_; }

 private:
  struct Node {
    Kind kind = Kind::Atom;
    int a = -1;
    int b = -1;
    int lower = 0;
    int upper = 0;
    int signal = -1;
    bool boolean = false;
    bool equals = true;  // RelOp flavour
    std::string sysfunc;
  };

  int add(const AstNode& n, const std::vector<std::string>& signals);
  PosSet bool_set(int id, Pad pad, int end, bool negate = false) const;
  PosSet seq_ends(int id, const PosSet& starts, Pad pad, int end);
  PosSet goto_ends(int b, int count, PosSet starts, Pad pad, int end) const;
  std::uint64_t prop(int id, Pad pad, int end);
  int max_end(int id, int max_start) const;
  int dollar(int lower) const { return std::max(lower, length_); }

  std::vector<Node> nodes_;
  int root_ = -1;
  int length_ = 0;
  int horizon_ = 0;
  std::uint64_t full_ = 0;
  std::vector<std::uint64_t> real_;  // real-cycle mask per boolean node
};

/// Whole-assertion check on one trace: every attempt must hold weakly, and an attempt
/// that fails is rescued when the disable condition fires at some cycle j >= start and
/// the attempt holds weakly with the trace cut at j.
class AssertionEvaluator {
 public:
  AssertionEvaluator(const AssertionUnit& unit, const std::vector<std::string>& signals, int length);

  bool passes(std::span<const std::uint64_t> signal_masks);

 private:
  CompiledProperty body_;
  std::optional<CompiledProperty> disable_;
  int length_;
};

}  // namespace svagen::equiv::detail
