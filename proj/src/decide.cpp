#include "treeshift/decide.hpp"

#include <stdexcept>

namespace treeshift {

namespace {

void check_comparable(const RabinAutomaton& a1, const RabinAutomaton& a2) {
  if (a1.signature() != a2.signature())
    throw std::invalid_argument("shift comparison requires equal arities");
  if (a1.alphabet() != a2.alphabet())
    throw std::invalid_argument("shift comparison requires equal alphabets");
}

/// The two one-sided pattern differences of a pair of shifts, as finite-tree
/// automata over the joined complement bases. A pattern lands in the first
/// difference exactly when the unique complement run roots outside the
/// first initial set and inside the second one.
struct DifferencePair {
  FiniteTreeAutomaton first_minus_second;
  FiniteTreeAutomaton second_minus_first;
};

DifferencePair difference_pair(const RabinAutomaton& a1, const RabinAutomaton& a2) {
  const FiniteTreeAutomaton c1 = complement_of_shift(a1);
  const FiniteTreeAutomaton c2 = complement_of_shift(a2);
  RabinAutomaton base = join(c1.base(), c2.base());
  const int n2 = c2.base().state_count();
  const int final_pair = c1.final_state() * n2 + c2.final_state();

  std::vector<char> in1(static_cast<std::size_t>(c1.base().state_count()), 0);
  for (int s : c1.initial()) in1[static_cast<std::size_t>(s)] = 1;
  std::vector<char> in2(static_cast<std::size_t>(n2), 0);
  for (int s : c2.initial()) in2[static_cast<std::size_t>(s)] = 1;

  std::vector<int> first_initial, second_initial;
  for (int s1 = 0; s1 < c1.base().state_count(); ++s1) {
    for (int s2 = 0; s2 < n2; ++s2) {
      const bool i1 = in1[static_cast<std::size_t>(s1)] != 0;
      const bool i2 = in2[static_cast<std::size_t>(s2)] != 0;
      if (!i1 && i2) first_initial.push_back(s1 * n2 + s2);
      if (i1 && !i2) second_initial.push_back(s1 * n2 + s2);
    }
  }
  FiniteTreeAutomaton fms(base, std::move(first_initial), final_pair);
  FiniteTreeAutomaton smf(std::move(base), std::move(second_initial), final_pair);
  return DifferencePair{std::move(fms), std::move(smf)};
}

void push_size_stats(Verdict& v, const std::string& prefix, const RabinAutomaton& a) {
  v.stats.emplace_back(prefix + "_states", static_cast<std::size_t>(a.state_count()));
  v.stats.emplace_back(prefix + "_bundles", a.bundles().size());
}

}  // namespace

Verdict equal_shifts(const RabinAutomaton& a1, const RabinAutomaton& a2) {
  check_comparable(a1, a2);
  const DifferencePair diff = difference_pair(a1, a2);
  Verdict v;
  push_size_stats(v, "difference_base", diff.first_minus_second.base());
  if (!fta_is_empty(diff.first_minus_second)) {
    v.answer = false;
    v.witness = fta_witness(diff.first_minus_second);
    v.detail = "pattern accepted by the first shift only";
    return v;
  }
  if (!fta_is_empty(diff.second_minus_first)) {
    v.answer = false;
    v.witness = fta_witness(diff.second_minus_first);
    v.detail = "pattern accepted by the second shift only";
    return v;
  }
  v.answer = true;
  return v;
}

Verdict is_full(const RabinAutomaton& a) {
  const FiniteTreeAutomaton c = complement_of_shift(a);
  Verdict v;
  push_size_stats(v, "complement_base", c.base());
  if (fta_is_empty(c)) {
    v.answer = true;
  } else {
    v.answer = false;
    v.witness = fta_witness(c);
    v.detail = "pattern outside the shift";
  }
  return v;
}

Verdict shift_contained(const RabinAutomaton& a, const RabinAutomaton& b) {
  check_comparable(a, b);
  const DifferencePair diff = difference_pair(a, b);
  Verdict v;
  if (fta_is_empty(diff.first_minus_second)) {
    v.answer = true;
  } else {
    v.answer = false;
    v.witness = fta_witness(diff.first_minus_second);
    v.detail = "pattern of the first shift missing from the second";
  }
  return v;
}

namespace {

Verdict surjective_against(const RabinAutomaton& image, const RabinAutomaton& target) {
  Verdict v = equal_shifts(image, target);
  push_size_stats(v, "image", image);
  if (!v.answer) {
    if (v.detail == "pattern accepted by the first shift only")
      v.detail = "image pattern outside the target shift";
    else
      v.detail = "target pattern missing from the image";
  }
  return v;
}

}  // namespace

Verdict decide_surjective(const CellularAutomaton& tau, const RabinAutomaton& target) {
  return surjective_against(image_automaton(tau), target);
}

Verdict decide_surjective(const CellularAutomaton& tau, const SftSpec& target) {
  return surjective_against(image_automaton(tau), presentation(target));
}

Verdict decide_surjective_sofic(const CellularAutomaton& tau, const RabinAutomaton& target,
                                const RabinAutomaton& domain_presentation) {
  if (domain_presentation.alphabet() != tau.domain().alphabet())
    throw std::invalid_argument("domain presentation alphabet must match the rule domain");
  const RabinAutomaton dp = essentialize(domain_presentation);
  if (dp.empty()) {
    // The image of the empty shift is empty.
    RabinAutomaton empty_image(target.signature(), tau.target_alphabet(), {}, {});
    return surjective_against(empty_image, target);
  }
  const SftCover cover = sft_cover(dp);
  const CellularAutomaton composite = compose_relabel(tau, cover.relabel);
  return surjective_against(image_automaton(composite), target);
}

Verdict decide_injective(const CellularAutomaton& tau) {
  const RabinAutomaton image = image_automaton(tau);
  Verdict v;
  push_size_stats(v, "image", image);
  if (image.empty()) {
    v.answer = true;
    v.detail = "empty domain";
    return v;
  }
  const RabinAutomaton pair = join(image, image);
  const std::vector<int> surviving = essential_states(pair);
  v.stats.emplace_back("essential_self_join_states", surviving.size());
  const int n = image.state_count();
  for (int s : surviving) {
    if (s / n != s % n) {
      v.answer = false;
      v.detail = "surviving nondiagonal state pair " + pair.state_name(s);
      return v;
    }
  }
  v.answer = true;
  return v;
}

Verdict surjunctivity_check(const CellularAutomaton& tau) {
  if (tau.target_alphabet() != tau.domain().alphabet())
    throw std::invalid_argument("surjunctivity check needs matching alphabets");
  const RabinAutomaton image = image_automaton(tau);
  const RabinAutomaton domain = presentation(tau.domain());
  const Verdict contained = shift_contained(image, domain);
  if (!contained.answer)
    throw std::invalid_argument("rule image is not contained in its domain shift");
  const Verdict inj = decide_injective(tau);
  const Verdict surj = surjective_against(image, domain);
  Verdict v;
  v.answer = inj.answer && !surj.answer;
  v.detail = std::string("injective=") + (inj.answer ? "yes" : "no") +
             " surjective=" + (surj.answer ? "yes" : "no");
  if (v.answer && surj.witness) v.witness = surj.witness;
  return v;
}

}  // namespace treeshift
