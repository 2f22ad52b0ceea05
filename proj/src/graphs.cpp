#include "gwloc/graphs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace gwloc::graphs {

namespace {

std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t out = 1;
    for (std::uint64_t k = 2; k <= n; ++k) {
        out *= k;
    }
    return out;
}

struct Neighbor {
    int vertex;
    int degree;
};

std::vector<std::vector<Neighbor>> adjacency(const TreeShape& shape, std::span<const int> degrees) {
    std::vector<std::vector<Neighbor>> adj(shape.vertex_count());
    const auto edges = shape.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        adj[edges[k].u].push_back({edges[k].v, degrees[k]});
        adj[edges[k].v].push_back({edges[k].u, degrees[k]});
    }
    return adj;
}

// Rooted encoding of the subtree hanging below `vertex` (coming from `from`).
struct Encoder {
    const std::vector<std::vector<Neighbor>>& adj;

    struct Child {
        std::string tag;  // degree followed by the child's encoding
        int vertex;
    };

    std::string encode(int vertex, int from, std::uint64_t& aut) const {
        std::vector<std::string> tags;
        for (const Neighbor& n : adj[vertex]) {
            if (n.vertex == from) {
                continue;
            }
            tags.push_back(std::to_string(n.degree) + encode(n.vertex, vertex, aut));
        }
        std::sort(tags.begin(), tags.end());
        std::string out = "(";
        for (std::size_t i = 0; i < tags.size();) {
            std::size_t j = i;
            while (j < tags.size() && tags[j] == tags[i]) {
                out += tags[j];
                ++j;
            }
            aut *= factorial(j - i);
            i = j;
        }
        out += ")";
        return out;
    }

    std::vector<Child> sorted_children(int vertex, int from) const {
        std::vector<Child> children;
        for (const Neighbor& n : adj[vertex]) {
            if (n.vertex == from) {
                continue;
            }
            std::uint64_t unused = 1;
            children.push_back({std::to_string(n.degree) + encode(n.vertex, vertex, unused), n.vertex});
        }
        std::sort(children.begin(), children.end(),
                  [](const Child& a, const Child& b) { return a.tag < b.tag; });
        return children;
    }

    void preorder(int vertex, int from, std::vector<int>& order) const {
        order.push_back(vertex);
        for (const Child& c : sorted_children(vertex, from)) {
            preorder(c.vertex, vertex, order);
        }
    }
};

std::vector<int> centroids(const std::vector<std::vector<Neighbor>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> size(n, 1), parent(n, -1), order;
    order.reserve(n);
    std::vector<int> stack{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (const Neighbor& nb : adj[v]) {
            if (!seen[nb.vertex]) {
                seen[nb.vertex] = true;
                parent[nb.vertex] = v;
                stack.push_back(nb.vertex);
            }
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (parent[*it] >= 0) {
            size[parent[*it]] += size[*it];
        }
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v) {
        int largest = n - size[v];
        for (const Neighbor& nb : adj[v]) {
            if (nb.vertex != parent[v]) {
                largest = std::max(largest, size[nb.vertex]);
            }
        }
        if (2 * largest <= n) {
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace

TreeShape TreeShape::from_edges(int vertex_count, std::vector<Edge> edges) {
    if (vertex_count < 2) {
        throw std::invalid_argument("a tree shape needs at least two vertices");
    }
    if (static_cast<int>(edges.size()) != vertex_count - 1) {
        throw std::invalid_argument("a tree on n vertices has n - 1 edges");
    }
    std::vector<int> root(vertex_count);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) {
            x = root[x] = root[root[x]];
        }
        return x;
    };
    for (const Edge& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count || e.u == e.v) {
            throw std::invalid_argument("edge endpoint out of range or loop");
        }
        const int a = find(e.u);
        const int b = find(e.v);
        if (a == b) {
            throw std::invalid_argument("edges contain a cycle");
        }
        root[a] = b;
    }
    return TreeShape(vertex_count, std::move(edges));
}

std::vector<std::vector<int>> TreeShape::incidence() const {
    std::vector<std::vector<int>> out(vertex_count_);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        out[edges_[k].u].push_back(static_cast<int>(k));
        out[edges_[k].v].push_back(static_cast<int>(k));
    }
    return out;
}

int DecoratedShape::total_degree() const {
    return std::accumulate(degrees.begin(), degrees.end(), 0);
}

int DecoratedShape::valence(int vertex) const {
    int count = vertex == 0 ? 0 : 1;
    for (int v = 1; v < vertex_count(); ++v) {
        if (parent[v] == vertex) {
            ++count;
        }
    }
    return count;
}

CanonicalForm canonical_form(const TreeShape& shape, std::span<const int> degrees) {
    if (static_cast<int>(degrees.size()) != shape.edge_count()) {
        throw std::invalid_argument("one degree per edge required");
    }
    const auto adj = adjacency(shape, degrees);
    const Encoder enc{adj};
    const std::vector<int> cs = centroids(adj);

    CanonicalForm out;
    if (cs.size() == 1) {
        out.key = enc.encode(cs[0], -1, out.aut_order);
        enc.preorder(cs[0], -1, out.order);
        return out;
    }

    const int a = cs[0];
    const int b = cs[1];
    int middle_degree = 0;
    for (const Neighbor& n : adj[a]) {
        if (n.vertex == b) {
            middle_degree = n.degree;
        }
    }
    std::uint64_t aut_a = 1, aut_b = 1;
    const std::string half_a = enc.encode(a, b, aut_a);
    const std::string half_b = enc.encode(b, a, aut_b);
    out.aut_order = aut_a * aut_b * (half_a == half_b ? 2 : 1);
    const bool a_first = half_a <= half_b;
    out.key = "[" + std::to_string(middle_degree) + "]" + (a_first ? half_a + half_b : half_b + half_a);
    enc.preorder(a_first ? a : b, -1, out.order);
    return out;
}

DecoratedShape canonicalize(const TreeShape& shape, std::span<const int> degrees) {
    CanonicalForm form = canonical_form(shape, degrees);
    const int n = shape.vertex_count();
    std::vector<int> new_id(n);
    for (int i = 0; i < n; ++i) {
        new_id[form.order[i]] = i;
    }
    const auto adj = adjacency(shape, degrees);

    std::vector<int> parent(n, -1);
    std::vector<int> deg(n - 1, 0);
    for (int old = 0; old < n; ++old) {
        for (const Neighbor& nb : adj[old]) {
            // In preorder every non-root vertex's parent has the smaller id.
            const int child = new_id[nb.vertex];
            if (child > new_id[old] && parent[child] == -1) {
                parent[child] = new_id[old];
                deg[child - 1] = nb.degree;
            }
        }
    }
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int v = 1; v < n; ++v) {
        edges.push_back({parent[v], v});
    }
    return DecoratedShape{TreeShape::from_edges(n, std::move(edges)), std::move(parent), std::move(deg),
                          form.aut_order, std::move(form.key)};
}

std::vector<TreeShape> enumerate_shapes(int max_edges) {
    if (max_edges < 1) {
        throw std::invalid_argument("max_edges must be positive");
    }
    std::vector<std::pair<int, DecoratedShape>> all;
    std::map<std::string, DecoratedShape> level;
    {
        const std::vector<int> one{1};
        auto s = canonicalize(TreeShape::from_edges(2, {{0, 1}}), one);
        level.emplace(s.key, std::move(s));
    }
    for (int edges = 1;; ++edges) {
        for (auto& [key, s] : level) {
            all.emplace_back(edges, s);
        }
        if (edges == max_edges) {
            break;
        }
        std::map<std::string, DecoratedShape> next;
        for (const auto& [key, s] : level) {
            const int n = s.vertex_count();
            for (int v = 0; v < n; ++v) {
                std::vector<Edge> grown(s.shape.edges().begin(), s.shape.edges().end());
                grown.push_back({v, n});
                const std::vector<int> ones(grown.size(), 1);
                auto c = canonicalize(TreeShape::from_edges(n + 1, std::move(grown)), ones);
                next.try_emplace(c.key, std::move(c));
            }
        }
        level = std::move(next);
    }
    std::vector<TreeShape> out;
    out.reserve(all.size());
    for (auto& [edges, s] : all) {
        out.push_back(std::move(s.shape));
    }
    return out;
}

std::vector<DecoratedShape> decorate(const TreeShape& shape, int d) {
    const int e = shape.edge_count();
    std::map<std::string, DecoratedShape> found;
    if (e > d) {
        return {};
    }
    std::vector<int> degrees(e, 1);
    // Compositions of d into e positive parts, in lexicographic order.
    auto recurse = [&](auto&& self, int index, int remaining) -> void {
        if (index == e - 1) {
            degrees[index] = remaining;
            auto c = canonicalize(shape, degrees);
            found.try_emplace(c.key, std::move(c));
            return;
        }
        for (int part = 1; part <= remaining - (e - 1 - index); ++part) {
            degrees[index] = part;
            self(self, index + 1, remaining - part);
        }
    };
    recurse(recurse, 0, d);
    std::vector<DecoratedShape> out;
    out.reserve(found.size());
    for (auto& [key, s] : found) {
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<DecoratedShape> decorated_shapes(int d) {
    if (d < 1) {
        throw std::invalid_argument("degree must be positive");
    }
    std::vector<DecoratedShape> out;
    for (const TreeShape& shape : enumerate_shapes(d)) {
        for (DecoratedShape& s : decorate(shape, d)) {
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::uint64_t labeling_count(const DecoratedShape& shape, int r) {
    std::uint64_t count = static_cast<std::uint64_t>(r) + 1;
    for (int k = 0; k < shape.edge_count(); ++k) {
        count *= static_cast<std::uint64_t>(r);
    }
    return count;
}

std::vector<FixedGraph> enumerate_labelings(std::shared_ptr<const DecoratedShape> shape, int r) {
    if (r < 1) {
        throw std::invalid_argument("r must be positive");
    }
    std::vector<FixedGraph> out;
    out.reserve(labeling_count(*shape, r));
    for_each_labeling(*shape, r, [&](std::span<const int> labels) {
        out.push_back(FixedGraph{shape, std::vector<int>(labels.begin(), labels.end())});
    });
    return out;
}

std::uint64_t a_gamma(const DecoratedShape& shape) {
    std::uint64_t out = shape.aut_order;
    for (int d : shape.degrees) {
        out *= static_cast<std::uint64_t>(d);
    }
    return out;
}

std::uint64_t a_gamma(const FixedGraph& graph) { return a_gamma(*graph.decorated); }

std::uint64_t count_fixed_graphs(int r, int d) {
    if (r < 1 || d < 1) {
        throw std::invalid_argument("r and d must be positive");
    }
    std::uint64_t total = 0;
    for (const DecoratedShape& s : decorated_shapes(d)) {
        total += labeling_count(s, r);
    }
    return total;
}

std::vector<Flag> flags(const FixedGraph& graph) {
    std::vector<Flag> out;
    const auto edges = graph.decorated->shape.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        out.push_back({edges[k].u, static_cast<int>(k)});
        out.push_back({edges[k].v, static_cast<int>(k)});
    }
    return out;
}

int valence(const FixedGraph& graph, int vertex) { return graph.decorated->valence(vertex); }

int opposite_vertex(const DecoratedShape& shape, const Flag& flag) {
    const Edge& e = shape.shape.edges()[flag.edge];
    if (e.u == flag.vertex) {
        return e.v;
    }
    if (e.v == flag.vertex) {
        return e.u;
    }
    throw std::invalid_argument("flag vertex is not an endpoint of its edge");
}

std::string catalog_record(const FixedGraph& graph) {
    const DecoratedShape& s = *graph.decorated;
    std::ostringstream out;
    out << s.key << '\t';
    const auto edges = s.shape.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        out << (k ? "," : "") << edges[k].u << '-' << edges[k].v << ':' << s.degrees[k];
    }
    out << '\t';
    for (std::size_t v = 0; v < graph.labels.size(); ++v) {
        out << (v ? "," : "") << graph.labels[v];
    }
    out << '\t' << a_gamma(graph);
    return out.str();
}

}  // namespace gwloc::graphs
