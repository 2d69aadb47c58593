import random
from fractions import Fraction

import pytest

from graphchords import (
    ConnSubset,
    PartitionCertificate,
    PreconditionError,
    construct_partition_1k,
    construct_partition_euler,
    graph_chord_solve,
    integral_subset,
    verify_partition,
)
from graphchords.randgen import random_zero_mean_function

F = Fraction


class TestVerify:
    def test_interval_thirds(self, single_edge):
        cert = PartitionCertificate(
            single_edge,
            tuple(
                ConnSubset(single_edge, {"a": [(F(i, 3), F(i + 1, 3))]})
                for i in range(3)
            ),
            r=F(1, 3),
            n=1,
        )
        assert verify_partition(single_edge, cert)

    def test_theta_whole_edges(self, theta):
        cert = PartitionCertificate(
            theta,
            tuple(ConnSubset(theta, {e: [(0, 1)]}) for e in "abc"),
            r=F(1),
            n=1,
        )
        assert verify_partition(theta, cert)

    def test_uncovered_half_fails(self, single_edge):
        cert = PartitionCertificate(
            single_edge,
            (ConnSubset(single_edge, {"a": [(0, F(1, 2))]}),),
            r=F(1, 2),
            n=1,
        )
        assert not verify_partition(single_edge, cert)

    def test_wrong_measure_fails(self, single_edge):
        cert = PartitionCertificate(
            single_edge,
            (ConnSubset(single_edge, {"a": [(0, 1)]}),),
            r=F(1, 2),
            n=1,
        )
        assert not verify_partition(single_edge, cert)


class TestConstruct1k:
    def test_triangle_k2(self, triangle):
        cert = construct_partition_1k(triangle, 2)
        assert (cert.r, cert.n, len(cert.subsets)) == (F(1, 2), 2, 12)
        assert verify_partition(triangle, cert)

    def test_figure_eight_k1(self, figure_eight):
        cert = construct_partition_1k(figure_eight, 1)
        assert (cert.r, cert.n, len(cert.subsets)) == (F(1), 2, 4)
        assert verify_partition(figure_eight, cert)

    def test_theta_k3(self, theta):
        cert = construct_partition_1k(theta, 3)
        assert (cert.r, cert.n, len(cert.subsets)) == (F(1, 3), 2, 18)
        assert verify_partition(theta, cert)

    def test_degree_one_rejected(self, single_edge):
        with pytest.raises(PreconditionError):
            construct_partition_1k(single_edge, 2)


class TestConstructEuler:
    def test_figure_eight_k4(self, figure_eight):
        cert = construct_partition_euler(figure_eight, 4)
        assert (cert.r, cert.n, len(cert.subsets)) == (F(1, 2), 1, 4)
        assert verify_partition(figure_eight, cert)

    def test_triangle_k1_whole_graph(self, triangle):
        cert = construct_partition_euler(triangle, 1)
        assert cert.subsets == (ConnSubset.whole_graph(triangle),)
        assert (cert.r, cert.n) == (F(3), 1)
        assert verify_partition(triangle, cert)

    def test_triangle_k3_unit_arcs(self, triangle):
        cert = construct_partition_euler(triangle, 3)
        assert (cert.r, cert.n, len(cert.subsets)) == (F(1), 1, 3)
        assert verify_partition(triangle, cert)

    def test_non_euler_rejected(self, theta):
        with pytest.raises(PreconditionError):
            construct_partition_euler(theta, 2)

    def test_arc_longer_than_edge(self, figure_eight):
        # k < |E| gives arcs of measure > 1, still exact since the circuit
        # visits each edge once
        cert = construct_partition_euler(figure_eight, 1)
        assert cert.r == 2
        assert verify_partition(figure_eight, cert)


def test_partition_members_witness_chord_inclusion(theta, triangle):
    # every constructed r <= 1 admits zero-integral subsets for random
    # zero-mean functions: the computational content of the closure inclusion
    rng = random.Random(41)
    for graph, k in ((theta, 2), (triangle, 3)):
        cert = construct_partition_1k(graph, k)
        assert verify_partition(graph, cert)
        for _ in range(10):
            f = random_zero_mean_function(rng, graph)
            result = graph_chord_solve(graph, f, cert.r)
            assert result.subset.measure() == cert.r
            assert integral_subset(f, result.subset) == 0
