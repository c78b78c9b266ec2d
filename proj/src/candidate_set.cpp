#include "cyclotome/candidate_set.hpp"

#include "cyclotome/error.hpp"

namespace cyclotome {

std::string provenance_tag(const Provenance& provenance) {
  switch (provenance.index()) {
    case 1: return "CaseA";
    case 2: return "CaseB";
    default: return "UserSupplied";
  }
}

CandidateSet::CandidateSet(SchemePtr scheme, IndexSet index_set, Provenance provenance)
    : scheme_(std::move(scheme)), provenance_(std::move(provenance)) {
  if (index_set.modulus() != scheme_->order()) {
    throw Error(Errc::BadIndexSet, "index set modulus differs from the scheme order");
  }
  membership_ = Bitmask(scheme_->field().order());
  for (auto i : index_set) scheme_->for_each_in_class(i, [&](Code x) { membership_.set(x); });
  size_ = membership_.count();
  index_set_ = std::move(index_set);
}

CandidateSet CandidateSet::from_membership(SchemePtr scheme, Bitmask membership,
                                           Provenance provenance) {
  if (membership.size() != scheme->field().order()) {
    throw Error(Errc::InvalidInput, "membership bitmask size differs from the field order");
  }
  CandidateSet set;
  set.scheme_ = std::move(scheme);
  set.membership_ = std::move(membership);
  set.size_ = set.membership_.count();

  // Recover I when every class lies entirely inside or outside the set.
  const std::uint32_t N = set.scheme_->order();
  const auto exps = set.field().exp_table();
  std::vector<int> state(N, -1);
  bool uniform = !set.membership_.test(0);
  for (std::size_t k = 0; k < exps.size() && uniform; ++k) {
    const int in = set.membership_.test(exps[k]) ? 1 : 0;
    int& s = state[k % N];
    if (s < 0) {
      s = in;
    } else if (s != in) {
      uniform = false;
    }
  }
  if (uniform) {
    std::vector<std::uint32_t> members;
    for (std::uint32_t i = 0; i < N; ++i) {
      if (state[i] == 1) members.push_back(i);
    }
    set.index_set_ = IndexSet(std::move(members), N);
    set.provenance_ = std::move(provenance);
  } else {
    set.provenance_ = UserSupplied{};
  }
  return set;
}

std::vector<Code> CandidateSet::elements() const {
  std::vector<Code> out;
  out.reserve(size_);
  for (std::size_t x = 0; x < membership_.size(); ++x) {
    if (membership_.test(x)) out.push_back(static_cast<Code>(x));
  }
  return out;
}

CandidateSet union_of_classes(SchemePtr scheme, const IndexSet& index_set, Provenance provenance) {
  return CandidateSet(std::move(scheme), index_set, std::move(provenance));
}

}  // namespace cyclotome
