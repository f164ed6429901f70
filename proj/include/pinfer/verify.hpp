// Copyright 2026 The Pinfer Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Checking preconditions against a rewrite.
//
// A precondition is valid when, for every constant binding that satisfies
// the Assume: predicates, the precondition evaluates safely, and whenever it
// accepts, the rewrite is correct for all runtime values. It is weakest when
// it additionally accepts every non-trivial positive binding.

#ifndef PINFER_VERIFY_HPP
#define PINFER_VERIFY_HPP

#include <memory>
#include <optional>

#include "pinfer/examples.hpp"

namespace pinfer {

// Queries against the space of constant bindings. Bindings that violate the
// Assume: predicates are outside every query's domain. Counterexamples are
// deterministic: smallest in the order (type assignment index, constant
// values by name).
class Backend {
public:
  virtual ~Backend() = default;

  virtual ExClass classify(const ConstValuation &v) = 0;

  // First binding where the precondition is unsafe, or accepts while some
  // runtime value breaks the rewrite.
  virtual std::optional<ConstValuation> refinementCex(const PredPtr &pre) = 0;

  // First non-trivial positive binding the precondition fails to accept.
  virtual std::optional<ConstValuation> missedPositive(const PredPtr &pre) = 0;

  // First accepted binding that is not a non-trivial positive.
  virtual std::optional<ConstValuation> acceptedNonPositive(const PredPtr &pre) = 0;

  // First binding accepted by `a` but not by `b`.
  virtual std::optional<ConstValuation> weakerWitness(const PredPtr &a,
                                                      const PredPtr &b) = 0;

  // Up to k fresh bindings of the requested class, skipping `exclude`.
  virtual std::vector<ConstValuation> findExamples(ExClass want, size_t k,
                                                   const ExampleSet &exclude) = 0;
};

// Enumerates every runtime binding to decide each query exactly. Results per
// width assignment are cached. Refuses rewrites whose constants plus inputs
// exceed maxBits total bits under some assignment.
class ExhaustiveBackend : public Backend {
public:
  ExhaustiveBackend(const Optimization &opt, std::vector<TypeAssignment> tas,
                    int maxBits = 24);
  ~ExhaustiveBackend() override;

  ExClass classify(const ConstValuation &v) override;
  std::optional<ConstValuation> refinementCex(const PredPtr &pre) override;
  std::optional<ConstValuation> missedPositive(const PredPtr &pre) override;
  std::optional<ConstValuation> acceptedNonPositive(const PredPtr &pre) override;
  std::optional<ConstValuation> weakerWitness(const PredPtr &a,
                                              const PredPtr &b) override;
  std::vector<ConstValuation> findExamples(ExClass want, size_t k,
                                           const ExampleSet &exclude) override;

  // Visits every assumption-satisfying binding in counterexample order.
  // The callback returns false to stop early.
  void forEachValuation(
      const std::function<bool(const ConstValuation &, ExClass)> &fn);

  const std::vector<TypeAssignment> &assignments() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

TriBool evalOn(const Optimization &opt, const PredPtr &pre, const ConstValuation &v);

// Keys of all assumption-satisfying bindings the precondition accepts, in
// enumeration order. Used for extensional formula comparison.
std::vector<std::string> acceptedKeys(ExhaustiveBackend &backend,
                                      const Optimization &opt, const PredPtr &pre);

// Keys of all non-trivial positive bindings.
std::vector<std::string> positiveKeys(ExhaustiveBackend &backend);

}  // namespace pinfer

#endif  // PINFER_VERIFY_HPP
