from cantorprobe.rng import SplitMix64


def test_reference_stream():
    # published SplitMix64 outputs for seed 1234567
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
        4593380528125082431,
        16408922859458223821,
    ]


def test_seed_zero_first_output():
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF


def test_symmetric_range():
    rng = SplitMix64(42)
    draws = rng.symmetric(2000)
    assert all(-1.0 <= u < 1.0 for u in draws)
    assert min(draws) < -0.9 and max(draws) > 0.9


def test_unit_uses_top_53_bits():
    rng = SplitMix64(7)
    z = SplitMix64(7).next_u64()
    assert rng.next_unit() == (z >> 11) * 2.0 ** -53
