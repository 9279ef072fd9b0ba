// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_HE_BACKEND_HPP
#define EDLS_HE_BACKEND_HPP

#include <concepts>
#include <memory>
#include <span>

#include "edls/he/ciphertext.hpp"
#include "edls/he/context.hpp"
#include "edls/he/encoder.hpp"
#include "edls/he/evaluator.hpp"
#include "edls/he/keys.hpp"

namespace edls::he {

// Evaluation surface the neural network layers are written against. Two
// implementations exist: HeBackend (real ciphertexts) and RefBackend
// (plaintext slot vectors with the same level/scale bookkeeping and the
// same error behaviour). Running a graph through both and comparing slots
// is the primary correctness harness for the encrypted path.
template <typename B>
concept EvalBackend = requires(const B& b, const typename B::Ct& ct,
                               const typename B::Pt& pt,
                               std::span<const double> values, double x,
                               int level) {
  typename B::Ct;
  typename B::Pt;
  { b.encode_slots(values, x, level) } -> std::same_as<typename B::Pt>;
  { b.encode_const(x, x, level) } -> std::same_as<typename B::Pt>;
  { b.add(ct, ct) } -> std::same_as<typename B::Ct>;
  { b.add_plain(ct, pt) } -> std::same_as<typename B::Ct>;
  { b.mul(ct, ct) } -> std::same_as<typename B::Ct>;
  { b.mul_plain(ct, pt) } -> std::same_as<typename B::Ct>;
  { b.mod_switch_to(ct, level) } -> std::same_as<typename B::Ct>;
  { b.level(ct) } -> std::convertible_to<int>;
  { b.scale(ct) } -> std::convertible_to<double>;
  { b.prime(level) } -> std::convertible_to<double>;
  { b.top_level() } -> std::convertible_to<int>;
  { b.default_scale() } -> std::convertible_to<double>;
  { b.slot_count() } -> std::convertible_to<std::size_t>;
  { B::encrypted } -> std::convertible_to<bool>;
};

// Encrypted evaluation backend. Holds no secret material: it is exactly
// what the inference service instantiates from a client's submitted record.
class HeBackend {
 public:
  using Ct = Ciphertext;
  using Pt = Plaintext;
  static constexpr bool encrypted = true;

  HeBackend(std::shared_ptr<const Context> ctx, RelinKey relin_key)
      : ctx_(std::move(ctx)),
        encoder_(ctx_),
        evaluator_(ctx_, std::move(relin_key)) {}

  Pt encode_slots(std::span<const double> values, double scale,
                  int level) const {
    return encoder_.encode(values, scale, level);
  }
  Pt encode_const(double value, double scale, int level) const {
    return encoder_.encode_const(value, scale, level);
  }
  Ct add(const Ct& a, const Ct& b) const { return evaluator_.add(a, b); }
  Ct add_plain(const Ct& ct, const Pt& pt) const {
    return evaluator_.add_plain(ct, pt);
  }
  Ct mul(const Ct& a, const Ct& b) const { return evaluator_.mul(a, b); }
  Ct mul_plain(const Ct& ct, const Pt& pt) const {
    return evaluator_.mul_plain(ct, pt);
  }
  Ct mod_switch_to(const Ct& ct, int level) const {
    return evaluator_.mod_switch_to(ct, level);
  }
  int level(const Ct& ct) const { return ct.level; }
  double scale(const Ct& ct) const { return ct.scale; }
  double prime(int level) const {
    return static_cast<double>(ctx_->prime(static_cast<std::size_t>(level)));
  }
  int top_level() const { return ctx_->top_level(); }
  double default_scale() const { return ctx_->params().scale; }
  std::size_t slot_count() const { return ctx_->slot_count(); }

  const Context& context() const { return *ctx_; }
  const Encoder& encoder() const { return encoder_; }
  const Evaluator& evaluator() const { return evaluator_; }

 private:
  std::shared_ptr<const Context> ctx_;
  Encoder encoder_;
  Evaluator evaluator_;
};

static_assert(EvalBackend<HeBackend>);

}  // namespace edls::he

#endif  // EDLS_HE_BACKEND_HPP
