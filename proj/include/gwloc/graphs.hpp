#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

// Decorated trees indexing the torus-fixed loci of the moduli space of
// genus-zero degree-d stable maps to P^r.
//
// A fixed locus is a tree whose edges carry covering degrees d_e (summing to
// d) and whose vertices carry fixed-point labels in {0..r}, adjacent labels
// distinct. We enumerate degree-decorated trees up to isomorphism and then
// ALL proper labelings of each one; every (shape, labeling) pair is weighted
// by 1 / (|Aut(decorated shape)| * prod d_e).
namespace gwloc::graphs {

struct Edge {
    int u = 0;
    int v = 0;
};

/// Unlabeled tree on vertices 0..n-1.
class TreeShape {
public:
    /// Throws std::invalid_argument unless the edges form a tree on
    /// `vertex_count` >= 2 vertices.
    static TreeShape from_edges(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    std::span<const Edge> edges() const { return edges_; }

    /// Edge ids incident to each vertex.
    std::vector<std::vector<int>> incidence() const;

private:
    TreeShape(int vertex_count, std::vector<Edge> edges)
        : vertex_count_(vertex_count), edges_(std::move(edges)) {}

    int vertex_count_ = 0;
    std::vector<Edge> edges_;
};

/// A tree with positive edge degrees, stored in canonical vertex numbering:
/// vertex 0 is the root and edge k joins parent[k + 1] to vertex k + 1, with
/// parent[v] < v.
struct DecoratedShape {
    TreeShape shape;
    std::vector<int> parent;   // parent[0] == -1
    std::vector<int> degrees;  // degrees[k] = d_e of edge k
    std::uint64_t aut_order = 1;
    std::string key;

    int vertex_count() const { return shape.vertex_count(); }
    int edge_count() const { return shape.edge_count(); }
    int total_degree() const;
    int valence(int vertex) const;
};

struct CanonicalForm {
    std::string key;
    std::uint64_t aut_order = 1;
    /// order[new_id] = old vertex id (preorder from the centroid root).
    std::vector<int> order;
};

/// AHU-style canonical form of a degree-decorated tree, rooted at its
/// centroid (or at the middle edge of a bicentroid). Equal keys exactly when
/// the decorated trees are isomorphic.
CanonicalForm canonical_form(const TreeShape& shape, std::span<const int> degrees);

/// Renumbers `shape` into canonical form, carrying the degrees along.
DecoratedShape canonicalize(const TreeShape& shape, std::span<const int> degrees);

/// One representative per isomorphism class of trees with 1..max_edges edges,
/// ordered by (edge count, canonical key).
std::vector<TreeShape> enumerate_shapes(int max_edges);

/// One representative per isomorphism class of degree assignments to the
/// edges of `shape` summing to d, ordered by key. Empty when the shape has
/// more than d edges.
std::vector<DecoratedShape> decorate(const TreeShape& shape, int d);

/// Every decorated shape of total degree d, ordered by (edge count, key).
std::vector<DecoratedShape> decorated_shapes(int d);

struct FixedGraph {
    std::shared_ptr<const DecoratedShape> decorated;
    std::vector<int> labels;  // labels[v] in {0..r}
};

struct Flag {
    int vertex = 0;
    int edge = 0;
};

/// Number of proper labelings with r + 1 labels: (r + 1) * r^edges.
std::uint64_t labeling_count(const DecoratedShape& shape, int r);

/// Visits every proper labeling of `shape` with labels {0..r} in
/// lexicographic order. `visit` receives a span of vertex labels.
template <class Visitor>
void for_each_labeling(const DecoratedShape& shape, int r, Visitor&& visit);

/// Same, restricted to labelings whose root (vertex 0) has `root_label`.
template <class Visitor>
void for_each_labeling_with_root(const DecoratedShape& shape, int r, int root_label,
                                 Visitor&& visit);

std::vector<FixedGraph> enumerate_labelings(std::shared_ptr<const DecoratedShape> shape, int r);

/// |A_Gamma| = |Aut(decorated shape)| * prod_e d_e.
std::uint64_t a_gamma(const DecoratedShape& shape);
std::uint64_t a_gamma(const FixedGraph& graph);

/// Total number of (decorated shape, labeling) pairs for (r, d).
std::uint64_t count_fixed_graphs(int r, int d);

std::vector<Flag> flags(const FixedGraph& graph);
int valence(const FixedGraph& graph, int vertex);

/// The endpoint of `flag.edge` other than `flag.vertex`.
int opposite_vertex(const DecoratedShape& shape, const Flag& flag);

/// One catalog line: key, edge list with degrees, label vector, a_Gamma,
/// tab separated. Example: "(1()1())\t0-1:1,0-2:1\t0,1,0\t2".
std::string catalog_record(const FixedGraph& graph);

// ---------------------------------------------------------------------------

namespace detail {

template <class Visitor>
void label_from(const DecoratedShape& shape, int r, std::vector<int>& labels, int vertex,
                Visitor& visit) {
    if (vertex == shape.vertex_count()) {
        visit(std::span<const int>(labels));
        return;
    }
    const int forbidden = labels[shape.parent[vertex]];
    for (int label = 0; label <= r; ++label) {
        if (label == forbidden) {
            continue;
        }
        labels[vertex] = label;
        label_from(shape, r, labels, vertex + 1, visit);
    }
}

}  // namespace detail

template <class Visitor>
void for_each_labeling_with_root(const DecoratedShape& shape, int r, int root_label,
                                 Visitor&& visit) {
    std::vector<int> labels(shape.vertex_count(), 0);
    labels[0] = root_label;
    detail::label_from(shape, r, labels, 1, visit);
}

template <class Visitor>
void for_each_labeling(const DecoratedShape& shape, int r, Visitor&& visit) {
    for (int root = 0; root <= r; ++root) {
        for_each_labeling_with_root(shape, r, root, visit);
    }
}

}  // namespace gwloc::graphs
