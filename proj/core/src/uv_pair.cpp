#include <algorithm>

#include "clusterlab/errors.hpp"
#include "clusterlab/pattern.hpp"
#include "frame.hpp"

namespace clusterlab {

UVPair builtin_uv(LatticePtr lattice, ClusterClass cls, const WeightModel& w) {
  const LatticeSpec& L = *lattice;
  detail::Frame f = detail::build_frame(L, cls);

  ElementSet v1 = f.template_set;
  v1.insert(f.x0);
  v1.insert(f.first_bond);
  ElementSet u1 = f.template_set;
  if (is_tree(cls)) {
    ElementSet partial;
    for (std::size_t j = 0; j + 1 < f.ray.size(); ++j) {
      BondRef b = BondRef::between(f.ray[j], f.ray[j + 1]);
      if (v1.contains(b)) partial.insert(b);
    }
    partial.insert(f.first_bond);
    ClusterClass host_class = is_directed(cls) ? ClusterClass::kDirectedBondAnimal : ClusterClass::kBondAnimal;
    Cluster tree = spanning_completion(partial, Cluster(lattice, host_class, v1));
    v1 = tree.elements();
    u1 = v1;
    u1.erase(f.x0);
    u1.erase(f.first_bond);
  }

  UVPair uv;
  uv.u = Pattern(u1, set_difference(f.frame, u1));
  uv.v = Pattern(v1, set_difference(f.frame, v1));
  const long exponent = static_cast<long>(f.nbrs.size()) - 1;
  uv.theta = (w.kind == WeightModel::Kind::kCollapse || w.kind == WeightModel::Kind::kPercolation)
                 ? w.solvent().pow(exponent)
                 : (w.mode == ArithmeticMode::kExact ? Scalar(1) : Scalar::from_double(1));
  uv.classes = {cls};
  uv.frame = f.frame;
  uv.boundary = f.boundary;
  uv.template_set = f.template_set;
  uv.description = "builtin(" + L.name() + "," + std::string(class_name(cls)) + ",inner=" + std::to_string(f.m0) +
                   ",outer=" + std::to_string(f.m1) + ")";
  check_uv_pair(uv);
  return uv;
}

}  // namespace clusterlab
