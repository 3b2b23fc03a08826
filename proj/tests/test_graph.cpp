#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>

#include "corpus.hpp"
#include "mobagent/generators.hpp"
#include "mobagent/port_graph.hpp"

using namespace mobagent;

namespace {

GraphError::Kind load_error(const std::string& text) {
  try {
    load_graph(text);
  } catch (const GraphError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return GraphError::Kind::malformed;
}

}  // namespace

TEST(LoadGraph, Triangle) {
  const PortGraph g = load_graph("0 1\n1 2\n0 2");
  const GraphStats s = stats(g);
  EXPECT_EQ(s.nodes, 3u);
  EXPECT_EQ(s.edges, 3u);
  EXPECT_EQ(s.max_degree, 2u);
  EXPECT_EQ(s.diameter, 1u);
}

TEST(LoadGraph, SingleEdge) {
  const GraphStats s = stats(load_graph("0 1"));
  EXPECT_EQ(s.nodes, 2u);
  EXPECT_EQ(s.edges, 1u);
  EXPECT_EQ(s.max_degree, 1u);
  EXPECT_EQ(s.diameter, 1u);
}

TEST(LoadGraph, PortsFollowNeighborOrder) {
  const PortGraph g = load_graph("2 0\n0 1\n3 0");
  ASSERT_EQ(g.degree(0), 3u);
  EXPECT_EQ(g.follow(0, 0).node, 1u);
  EXPECT_EQ(g.follow(0, 1).node, 2u);
  EXPECT_EQ(g.follow(0, 2).node, 3u);
}

TEST(LoadGraph, Errors) {
  EXPECT_EQ(load_error("0 1\n0 1"), GraphError::Kind::duplicate_edge);
  EXPECT_EQ(load_error("0 1\n1 0"), GraphError::Kind::duplicate_edge);
  EXPECT_EQ(load_error("0 0\n0 1"), GraphError::Kind::self_loop);
  EXPECT_EQ(load_error("0 1\n2 3"), GraphError::Kind::disconnected);
  EXPECT_EQ(load_error("n 3\n0 1\n1 5"), GraphError::Kind::index_out_of_range);
  EXPECT_EQ(load_error("0 x"), GraphError::Kind::malformed);
  EXPECT_EQ(load_error("n 4\n0 1\n1 2"), GraphError::Kind::disconnected);
}

TEST(LoadGraph, MissingFile) {
  EXPECT_THROW(load_graph_file("/nonexistent/graph.txt"), std::runtime_error);
}

TEST(Generators, Examples) {
  const GraphStats k4 = stats(generate(parse_generator_spec("complete:4")));
  EXPECT_EQ(k4.edges, 6u);
  EXPECT_EQ(k4.max_degree, 3u);
  EXPECT_EQ(k4.diameter, 1u);

  const GraphStats c5 = stats(generate(parse_generator_spec("cycle:5")));
  EXPECT_EQ(c5.edges, 5u);
  EXPECT_EQ(c5.max_degree, 2u);
  EXPECT_EQ(c5.diameter, 2u);

  const PortGraph petersen = generate(parse_generator_spec("petersen"));
  EXPECT_EQ(petersen.node_count(), 10u);
  EXPECT_EQ(petersen.edge_count(), 15u);
  for (NodeIndex v = 0; v < 10; ++v) EXPECT_EQ(petersen.degree(v), 3u);
  EXPECT_EQ(diameter(petersen), 2u);

  const PortGraph diamond = generate(parse_generator_spec("diamond"));
  EXPECT_EQ(diamond.node_count(), 4u);
  EXPECT_EQ(diamond.edge_count(), 5u);

  const PortGraph star = generate(parse_generator_spec("star:5"));
  EXPECT_EQ(star.node_count(), 5u);
  EXPECT_EQ(star.degree(0), 4u);
}

TEST(Generators, Diameter) {
  EXPECT_EQ(diameter(generate(parse_generator_spec("complete:4"))), 1u);
  EXPECT_EQ(diameter(generate(parse_generator_spec("path:4"))), 3u);
}

TEST(Generators, RejectsBadParameters) {
  EXPECT_THROW(parse_generator_spec("gnp:8:0"), GraphError);
  EXPECT_THROW(parse_generator_spec("gnp:8:1.5"), GraphError);
  EXPECT_THROW(parse_generator_spec("bogus:3"), GraphError);
  EXPECT_THROW(parse_generator_spec("complete"), GraphError);
  EXPECT_THROW(parse_generator_spec(""), GraphError);
  EXPECT_THROW(generate(parse_generator_spec("complete:0")), GraphError);
}

TEST(Generators, SeededGnpIsDeterministic) {
  const auto config = parse_generator_spec("gnp:16:0.3:seed=7");
  EXPECT_EQ(config.seed, 7u);
  EXPECT_EQ(generate(config), generate(config));
  auto other = config;
  other.seed = 8;
  EXPECT_FALSE(generate(config) == generate(other));
}

TEST(Generators, PortSeedShufflesPorts) {
  const PortGraph plain = generate(parse_generator_spec("complete:6"));
  const PortGraph shuffled = generate(parse_generator_spec("complete:6:ports=3"));
  EXPECT_FALSE(plain == shuffled);
  EXPECT_TRUE(std::equal(plain.edges().begin(), plain.edges().end(), shuffled.edges().begin(),
                         shuffled.edges().end()));
}

TEST(GraphProperties, RoundTripSymmetryAndDegreeSum) {
  auto corpus = fixtures::full_corpus(32);
  for (auto& [name, g] : fixtures::fixed_graphs()) {
    corpus.push_back({name + "+ports", g.with_shuffled_ports(11)});
  }
  for (const auto& [name, g] : corpus) {
    SCOPED_TRACE(name);
    EXPECT_EQ(load_graph(serialize_graph(g)), g);
    std::size_t degree_sum = 0;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      degree_sum += g.degree(v);
      for (Port p = 0; p < g.degree(v); ++p) {
        const PortEnd& there = g.follow(v, p);
        const PortEnd& back = g.follow(there.node, there.port);
        ASSERT_EQ(back.node, v);
        ASSERT_EQ(back.port, p);
      }
    }
    EXPECT_EQ(degree_sum, 2 * g.edge_count());
  }
}

TEST(GraphProperties, FileRoundTrip) {
  const PortGraph g = generate(parse_generator_spec("gnp:12:0.4:seed=2:ports=5"));
  const auto path = std::filesystem::temp_directory_path() / "mobagent_roundtrip.txt";
  {
    std::ofstream out(path);
    out << serialize_graph(g);
  }
  EXPECT_EQ(load_graph_file(path.string()), g);
  std::filesystem::remove(path);
}

TEST(GraphProperties, RelabelKeepsStructure) {
  const PortGraph g = generate(parse_generator_spec("gnp:10:0.4:seed=4"));
  std::vector<NodeIndex> mapping(g.node_count());
  std::iota(mapping.rbegin(), mapping.rend(), NodeIndex{0});
  const PortGraph r = g.relabeled(mapping);
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    ASSERT_EQ(r.degree(mapping[v]), g.degree(v));
    for (Port p = 0; p < g.degree(v); ++p) {
      EXPECT_EQ(r.follow(mapping[v], p).node, mapping[g.follow(v, p).node]);
    }
  }
  EXPECT_EQ(diameter(r), diameter(g));
}
