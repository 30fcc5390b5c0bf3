import numpy as np

from ellfan.lattice import int_matrix


class RandomMatrixGenerator(object):
    """Seeded source of small random integer matrices and vectors for property batteries."""

    def __init__(self, seed, low=-3, high=3):
        self.seed = seed
        self.low = low
        self.high = high
        self.set_seed()

    def set_seed(self):
        self.state = np.random.RandomState(self.seed)

    def get_random_integer(self, low=None, high=None):
        low = self.low if low is None else low
        high = self.high if high is None else high
        return int(self.state.randint(low, high + 1))

    def get_random_vector(self, n, low=None, high=None):
        return [self.get_random_integer(low, high) for _ in range(n)]

    def get_random_matrix(self, rows, cols, low=None, high=None):
        return int_matrix([self.get_random_vector(cols, low, high) for _ in range(rows)], ncols=cols)

    def get_random_shape(self, max_rows, max_cols, min_rows=0, min_cols=1):
        return (self.get_random_integer(min_rows, max_rows), self.get_random_integer(min_cols, max_cols))

    def get_random_permutation(self, n):
        return [int(i) for i in self.state.permutation(n)]
