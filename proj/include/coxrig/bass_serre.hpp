#pragma once

// Trees of finite groups, balls in their Bass-Serre trees, cylinders, and
// the image of N_G(G_e) -> Aut(G_e) for an edge group G_e.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxrig/fingroup.hpp"
#include "coxrig/splitting.hpp"

namespace coxrig {

/// Edge-group element in one endpoint frame mapped to the other.
using ElementMap = std::unordered_map<Permutation, Permutation, PermutationHash>;

struct TreeOfFiniteGroups {
  struct Edge {
    std::size_t from = 0, to = 0;
    /// Images of the edge-group generators in each endpoint group, in the
    /// same order.
    std::vector<Permutation> from_images, to_images;
    std::string name;
  };

  std::vector<FinGroup> vertex_groups;
  std::vector<std::string> vertex_names;
  std::vector<Edge> edges;

  /// Every vertex group is modelled by coxeter_perm_model of its special
  /// subsystem. Throws UnsupportedType for infinite or unmodelled vertices.
  static TreeOfFiniteGroups from_splitting(const SplitTree& tree, std::size_t bound = kDefaultOrderBound);

  /// Checks the tree shape and that each edge map is an injective
  /// homomorphism on both sides; throws InvalidTree.
  void validate() const;

  FinGroup edge_group(std::size_t edge, std::size_t at_vertex) const;
  std::size_t other_end(std::size_t edge, std::size_t vertex) const;
  /// Isomorphism of the edge group from the `from_vertex` frame to the other.
  ElementMap edge_isomorphism(std::size_t edge, std::size_t from_vertex) const;
};

inline constexpr std::size_t kDefaultRadius = 3;
inline constexpr std::size_t kDefaultBallVertexCap = 1'000'000;

struct TreeBall {
  struct Vertex {
    std::size_t quotient_vertex = 0;
    std::size_t depth = 0;
    std::optional<std::size_t> parent_edge;  ///< ball edge towards the base
    std::string name;                        ///< coset word relative to the base
  };
  struct Edge {
    std::size_t parent = 0, child = 0;
    std::size_t quotient_edge = 0;
    /// Transversal element t in G_parent; the edge is t * (quotient edge).
    Permutation coset_rep;
    /// Stabiliser t G_f t^-1 inside the parent's vertex group.
    FinGroup stabilizer_at_parent;
    /// Stabiliser inside the child's vertex group (the edge group itself).
    FinGroup stabilizer_at_child;
  };

  std::size_t radius = 0;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  std::vector<std::size_t> count_by_depth() const;
};

/// Throws OrderBoundExceeded beyond `vertex_cap` vertices.
TreeBall build_ball(const TreeOfFiniteGroups& t, std::size_t radius, std::size_t base = 0,
                    std::size_t vertex_cap = kDefaultBallVertexCap);

struct Cylinder {
  std::size_t stabilizer_order = 0;
  std::vector<std::size_t> edges;
  /// Stabiliser generators in the frame of the first edge's parent vertex.
  std::vector<Permutation> stabilizer_generators;
  bool connected = false;
};

/// Classes of ball edges with equal stabilisers. Throws MixedEdgeOrders
/// unless every edge group has the same order.
std::vector<Cylinder> cylinders(const TreeOfFiniteGroups& t, const TreeBall& ball);

inline constexpr const char* kNormalizerMethod = "lemma-6.2-extrapolation";
inline constexpr std::size_t kDefaultNormalizerStateCap = 10'000;

struct NormalizerImage {
  bool complete = false;
  std::string reason;  ///< why the walk stopped when incomplete
  std::string method = kNormalizerMethod;

  /// Elements of G_e (frame of the edge's `from` vertex); automorphisms
  /// below permute these indices.
  std::vector<Permutation> edge_elements;
  std::vector<Permutation> edge_generators;
  std::vector<Permutation> image_generators;
  std::optional<std::uint64_t> image_order;
  std::uint64_t inner_order = 1;
  bool equals_inner = false;
  /// Images of the edge generators under an image element outside Inn(G_e).
  std::optional<std::vector<Permutation>> outer_witness;
  std::size_t states = 0;
  std::vector<std::string> support;  ///< visited (vertex, subgroup) classes
};

/// Walks the fixed subtree of G_e modulo its normaliser. Each state is a
/// vertex of the quotient tree together with a conjugate H of G_e inside
/// that vertex group; normalisers of H contribute vertex generators and
/// revisited states contribute the elements joining two lifts.
NormalizerImage edge_normalizer_image(const TreeOfFiniteGroups& t, std::size_t edge,
                                      std::size_t state_cap = kDefaultNormalizerStateCap);

}  // namespace coxrig
