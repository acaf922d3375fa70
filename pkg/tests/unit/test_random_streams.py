from random_streams import DEFAULT_SEED, derive_rng


class TestRandomStreams:

    ##########################################################################
    # derive_rng()

    def test_same_key_same_draws(self):
        assert (derive_rng(1, "spgc-trial", 4).integers(0, 100, 20) == derive_rng(1, "spgc-trial", 4).integers(0, 100, 20)).all()

    def test_streams_and_indices_are_independent(self):
        base = derive_rng(1, "spgc-trial", 4).integers(0, 2**32, 8).tolist()
        assert base != derive_rng(1, "spgc-trial", 5).integers(0, 2**32, 8).tolist()
        assert base != derive_rng(1, "grundy-trial", 4).integers(0, 2**32, 8).tolist()
        assert base != derive_rng(2, "spgc-trial", 4).integers(0, 2**32, 8).tolist()

    def test_default_seed(self):
        assert DEFAULT_SEED == 0xC0FFEE
