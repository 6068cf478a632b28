#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "incalg/family.hpp"
#include "incalg/incidence.hpp"

namespace incalg {

enum class ComponentKind { Constant, ConvexEmbedding };

// Order-preserving map that is constant or a convex embedding on each
// component of its domain.
class FccMap {
 public:
  const ProsetRef& domain() const { return dom_; }
  const ProsetRef& codomain() const { return cod_; }
  const std::vector<std::size_t>& mapping() const { return map_; }
  std::size_t operator()(std::size_t s) const { return map_[s]; }
  // indexed by domain component
  const std::vector<ComponentKind>& kinds() const { return kinds_; }
  bool is_surjective() const;

 private:
  friend FccMap validate_fcc(ProsetRef, ProsetRef, std::vector<std::size_t>);
  ProsetRef dom_, cod_;
  std::vector<std::size_t> map_;
  std::vector<ComponentKind> kinds_;
};

// NotOrderPreserving, NotConvexImage, NotFcc.
FccMap validate_fcc(ProsetRef domain, ProsetRef codomain, std::vector<std::size_t> mapping);
FccMap validate_fcc_by_name(ProsetRef domain, ProsetRef codomain,
                            const std::vector<std::pair<std::string, std::string>>& mapping);
FccMap identity_map(const ProsetRef& p);
FccMap compose(const FccMap& g, const FccMap& f);  // g after f; NotComposable

// M[f]: M over the codomain -> M over the domain.
IncMatrix induced_hom(const FccMap& f, const IncMatrix& a);

struct CheckReport {
  std::size_t checked = 0;
  bool holds = true;
  std::string detail;
};
// M[g o f] = M[f] o M[g] on every generator and on random matrices.
CheckReport functoriality_check(const FccMap& f, const FccMap& g, const CoeffRing& r, Rng& rng,
                                std::size_t random_samples = 20);
// Surjective f: generator images are nonzero with disjoint supports and
// random nonzero matrices stay nonzero.
CheckReport surjective_implies_injective_check(const FccMap& f, const CoeffRing& r, Rng& rng,
                                               std::size_t random_samples = 20);

struct Coproduct {
  ProsetRef object;
  std::vector<FccMap> embeddings;
};
Coproduct coproduct(const std::vector<ProsetRef>& parts);
FccMap mediating_map(const Coproduct& c, const std::vector<FccMap>& legs);  // NotFcc

struct Pushout {
  ProsetRef object;
  FccMap p1, p2;
};
Pushout pushout(const FccMap& f, const FccMap& g);
// The unique map u with u o p1 = q1 and u o p2 = q2; NotFcc if the cocone does not factor.
FccMap pushout_mediating(const Pushout& po, const FccMap& q1, const FccMap& q2);

struct Coequalizer {
  ProsetRef object;
  FccMap p;
};
Coequalizer coequalizer(const FccMap& f1, const FccMap& f2);  // NotParallel

struct EqualizerReport {
  bool equalizes = true;  // M[f1] M[p] = M[f2] M[p]
  bool injective = true;  // M[p] has trivial kernel on a spanning set
  bool factors = true;    // test homs through Coeq factor through M[p]
  std::size_t checked = 0;
};
EqualizerReport equalizer_check(const FccMap& f1, const FccMap& f2, const CoeffRing& r, Rng& rng,
                                std::size_t test_homs = 5);

struct DirectLimitReport {
  std::size_t windows = 0;
  bool nested = true;
  bool embeddings_fcc = true;
  bool covers = true;
};
DirectLimitReport direct_limit_window_check(const FamilyRef& family, std::size_t windows);

// Pushout tree whose leaves are TwoBlock prosets.
struct GenTree {
  enum class Kind { Leaf, Union, Pushout } kind = Kind::Leaf;
  std::vector<std::string> lower, upper;  // Leaf: the n-block below the m-block
  std::vector<std::string> alpha;         // Pushout: the shared part
  std::vector<std::shared_ptr<GenTree>> children;  // Union: parts; Pushout: left, right, alpha tree
};
GenTree generation_decompose(const Proset& p);  // NotIrreducible, NoValidCutPair
Proset reassemble(const GenTree& t);

// Random FCC map: each component is sent to a constant or, when one can be
// found, embedded convexly.
FccMap random_fcc_map(const ProsetRef& domain, const ProsetRef& codomain, Rng& rng, double embed_bias = 0.6);

}  // namespace incalg
