import numpy as np
import pytest
import scipy.sparse as sp
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from absorbclust.classify import DegenerateScoresError
from absorbclust.estimators import AbsorptionTimes, LocalClusterer, check_graph
from absorbclust.graph import gen_caveman


@pytest.fixture(scope="module")
def cave_adj():
    return gen_caveman(6, 5).adjacency_matrix().toarray()


class TestCheckGraph:
    def test_dense_and_sparse(self, cave_adj):
        g = check_graph(cave_adj)
        assert g == check_graph(sp.csr_matrix(cave_adj))
        assert g.n_edges == 60

    @pytest.mark.parametrize("bad", [
        np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),   # asymmetric
        np.array([[1, 1], [1, 0]]),                    # self-loop
        np.array([[0, 2], [2, 0]]),                    # weighted
        np.zeros((2, 3)),                              # not square
    ])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            check_graph(bad)

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            check_graph(np.array([[0, np.nan], [np.nan, 0]]))


class TestAbsorptionTimes:
    def test_params_roundtrip(self):
        est = AbsorptionTimes(seed=3, method="rank1")
        assert est.get_params()["seed"] == 3
        twin = clone(est).set_params(cutoff=7)
        assert twin.cutoff == 7 and twin.method == "rank1"

    def test_fit_transform(self, path3):
        out = AbsorptionTimes(seed=2).fit_transform(path3.adjacency_matrix())
        np.testing.assert_allclose(out.ravel(), [4, 3, 0])

    def test_not_fitted(self, cave_adj):
        with pytest.raises(NotFittedError):
            AbsorptionTimes().transform(cave_adj)

    def test_shape_mismatch(self, cave_adj, path3):
        est = AbsorptionTimes().fit(cave_adj)
        with pytest.raises(ValueError):
            est.transform(path3.adjacency_matrix())

    def test_bad_seed(self, cave_adj):
        with pytest.raises(ValueError):
            AbsorptionTimes(seed=30).fit(cave_adj)

    @pytest.mark.parametrize("method", ["rank1", "series"])
    def test_methods_correlate(self, cave_adj, method):
        exact = AbsorptionTimes(seed=12).fit_transform(cave_adj).ravel()
        other = AbsorptionTimes(seed=12, method=method, cutoff=500).fit_transform(cave_adj)
        mask = np.arange(30) != 12
        assert np.corrcoef(exact[mask], other.ravel()[mask])[0, 1] > 0.9

    def test_local_descent_overrides(self, cave_adj):
        est = AbsorptionTimes(seed=0, method="local-descent", c=0.25, delta=0.025,
                              epsilon=0.0025).fit(cave_adj)
        assert est.scores_[0] == 0


class TestLocalClusterer:
    def test_fit_predict(self, cave_adj):
        labels = LocalClusterer(seed=12).fit_predict(cave_adj)
        assert labels.tolist() == [int(10 <= i < 15) for i in range(30)]

    def test_attributes(self, karate):
        est = LocalClusterer(seed=33).fit(karate[0])
        assert est.labels_[33] == 1
        assert est.cut_.seed == 33 and est.n_features_in_ == 34

    def test_bad_classifier(self, cave_adj):
        with pytest.raises(ValueError):
            LocalClusterer(classifier="dbscan").fit(cave_adj)

    def test_degenerate(self, star):
        with pytest.raises(DegenerateScoresError):
            LocalClusterer(seed=0).fit(star.adjacency_matrix())
