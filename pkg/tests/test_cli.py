import numpy as np
import pytest

from actinca.cli import (
    RenderSpec,
    SeedParseError,
    collision_seed,
    format_seed,
    main,
    parse_memory,
    parse_seed,
    render_spacetime,
)
from actinca.engine import (
    Ahistoric,
    ExplicitSeed,
    GeometricMemory,
    MajorityMemory,
    TrailingMajority,
)


# ---------------------------------------------------------------------------
# Seed parsing


def test_parse_seed_bracketed_pair():
    seed = parse_seed("[0011100000000000001,0100000000000001110]")
    assert seed == ExplicitSeed("0011100000000000001", "0100000000000001110")
    assert len(seed.seed_a) == 19


def test_parse_seed_variants():
    assert parse_seed("101,010") == ExplicitSeed("101", "010")
    assert parse_seed("  [ 101 , 010 ]  ") == ExplicitSeed("101", "010")
    assert parse_seed("[11100000000000001,00000010000000111]").seed_a[:3] == "111"


def test_parse_seed_errors_carry_positions():
    with pytest.raises(SeedParseError):
        parse_seed("1010")  # no comma
    with pytest.raises(SeedParseError):
        parse_seed("101,01")  # unequal
    with pytest.raises(SeedParseError):
        parse_seed(",")
    err = None
    try:
        parse_seed("[1012,1010]")
    except SeedParseError as exc:
        err = exc
    assert err is not None and err.position == 4
    assert "position 4" in str(err)


def test_format_seed_round_trip():
    seed = ExplicitSeed("0110", "1001")
    assert parse_seed(format_seed(seed)) == seed


# ---------------------------------------------------------------------------
# Memory flag parsing


def test_parse_memory_variants():
    assert parse_memory("ahistoric") == Ahistoric()
    assert parse_memory("majority") == MajorityMemory()
    assert parse_memory("tau:3") == TrailingMajority(3)
    assert parse_memory("alpha:0.9") == GeometricMemory(0.9)


def test_parse_memory_errors():
    for bad in ("", "history", "tau:x", "tau:0", "alpha:2", "majority:3", "tau"):
        with pytest.raises(ValueError):
            parse_memory(bad)


# ---------------------------------------------------------------------------
# Collision seed construction


def test_collision_seed_single_sites():
    seed = collision_seed(5)
    assert seed.seed_a == "100001"
    assert seed.seed_b == "000000"


def test_collision_seed_copies_pattern():
    seed = collision_seed(6, ExplicitSeed("110", "011"))
    assert seed.seed_a == "110000110"
    assert seed.seed_b == "011000011"
    with pytest.raises(ValueError):
        collision_seed(2, ExplicitSeed("110", "011"))
    with pytest.raises(ValueError):
        collision_seed(0)


# ---------------------------------------------------------------------------
# Rendering


def parse_p6(blob):
    assert blob.startswith(b"P6\n")
    header, rest = blob.split(b"255\n", 1)
    dims = header.decode().split("\n")[1].split()
    w, h = int(dims[0]), int(dims[1])
    img = np.frombuffer(rest, dtype=np.uint8).reshape(h, w, 3)
    return w, h, img


def test_render_chain_a_only():
    pattern_a = np.array([[0, 1, 0], [1, 0, 1]], dtype=np.uint8)
    pattern_b = np.zeros_like(pattern_a)
    blob = render_spacetime((pattern_a, pattern_b), RenderSpec(layout="chain_a_only"))
    w, h, img = parse_p6(blob)
    assert (w, h) == (3, 2)
    assert img[0, 0].tolist() == [255, 255, 255]
    assert img[0, 1].tolist() == [0, 0, 0]
    assert img[1, 2].tolist() == [0, 0, 0]


def test_render_stacked_with_separator():
    pattern_a = np.zeros((2, 4), dtype=np.uint8)
    pattern_b = np.ones((2, 4), dtype=np.uint8)
    blob = render_spacetime((pattern_a, pattern_b))
    w, h, img = parse_p6(blob)
    assert (w, h) == (4, 5)  # 2 + separator + 2
    assert (img[2] == 128).all()
    assert (img[:2] == 255).all()
    assert (img[3:] == 0).all()


def test_render_damage_overlay_marks_differences_red():
    base_a = np.array([[0, 1, 0, 0]], dtype=np.uint8)
    base_b = np.array([[1, 0, 0, 0]], dtype=np.uint8)
    pert_a = np.array([[0, 1, 1, 0]], dtype=np.uint8)
    pert_b = np.array([[1, 0, 0, 0]], dtype=np.uint8)
    spec = RenderSpec(damage_overlay=(pert_a, pert_b))
    w, h, img = parse_p6(render_spacetime((base_a, base_b), spec))
    assert (w, h) == (4, 3)
    assert img[0, 2].tolist() == [255, 0, 0]  # differing cell
    assert img[0, 1].tolist() == [0, 0, 0]  # matching active cell stays black
    assert img[2, 0].tolist() == [0, 0, 0]


def test_render_rejects_mismatched_shapes():
    a = np.zeros((2, 3), dtype=np.uint8)
    with pytest.raises(ValueError):
        render_spacetime((a, np.zeros((2, 4), dtype=np.uint8)))
    with pytest.raises(ValueError):
        RenderSpec(layout="sideways")
    with pytest.raises(ValueError):
        render_spacetime(
            (a, a), RenderSpec(damage_overlay=(np.zeros((1, 3), np.uint8),) * 2)
        )


# ---------------------------------------------------------------------------
# Subcommands end to end


def test_run_subcommand_writes_image(tmp_path):
    out = tmp_path / "pattern.ppm"
    code = main([
        "run", "--phi", "10", "--psi", "10", "--single-site",
        "--n", "50", "--steps", "40", "--out", str(out),
    ])
    assert code == 0
    w, h, img = parse_p6(out.read_bytes())
    assert (w, h) == (50, 81)


def test_run_subcommand_layout_a(tmp_path):
    out = tmp_path / "pattern.ppm"
    code = main([
        "run", "--phi", "14", "--psi", "9", "--rng-seed", "4",
        "--n", "30", "--steps", "20", "--layout", "a", "--out", str(out),
    ])
    assert code == 0
    w, h, _ = parse_p6(out.read_bytes())
    assert (w, h) == (30, 20)


def test_sweep_subcommand(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main([
        "sweep", "--memory", "tau:3", "--n", "20", "--steps", "10",
        "--rng-seed", "1", "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "phi,psi,memory,param,H,D"
    assert len(lines) == 1025  # all rules
    assert lines[1].startswith("0,0,tau,3,")


def test_damage_subcommand(tmp_path):
    out = tmp_path / "damage.csv"
    img = tmp_path / "damage.ppm"
    code = main([
        "damage", "--phi", "14", "--psi", "9", "--memory", "alpha:0.9",
        "--n", "40", "--steps", "30", "--rng-seed", "3",
        "--out", str(out), "--image", str(img),
    ])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "t,hamming,cone_width"
    assert lines[1] == "0,1,1"
    assert len(lines) == 31
    _, _, pixels = parse_p6(img.read_bytes())
    reds = (pixels == [255, 0, 0]).all(axis=-1)
    assert reds.any()


def test_classify_subcommand_stdout(capsys):
    code = main([
        "classify", "--phi", "0", "--psi", "31", "--seed", "[101,010]",
        "--n", "40", "--steps", "80", "--t-trans", "30", "--p-max", "10",
    ])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[1].startswith("0,31,ahistoric,,101,010,still_life,1,0,")


def test_taxonomy_subcommand(tmp_path):
    out = tmp_path / "matrix.csv"
    details = tmp_path / "details.csv"
    code = main([
        "taxonomy", "--rules", "0,31", "--memory", "tau:3",
        "--n", "40", "--steps", "60", "--t-trans", "20", "--p-max", "10",
        "--out", str(out), "--details", str(details),
    ])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "from_class,to_class,count"
    assert len(lines) == 37  # 6x6 matrix
    total = sum(int(line.rsplit(",", 1)[1]) for line in lines[1:])
    assert total == 1023
    assert len(details.read_text().strip().splitlines()) == 1024


def test_profile_subcommand(capsys):
    code = main(["profile", "--set", "stationary"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "neighbours,p_rest,p_excited"
    assert lines[3].startswith("2,1.000000,")


def test_collide_subcommand(tmp_path):
    out = tmp_path / "activity.csv"
    code = main([
        "collide", "--phi", "7", "--psi", "4", "--memory", "tau:3",
        "--distance", "10", "--n", "60", "--steps", "30", "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "t,active_a,active_b"
    assert lines[1] == "0,2,0"


def test_error_exits_with_two(tmp_path, capsys):
    bad_calls = [
        ["run", "--phi", "99", "--psi", "0", "--single-site", "--out", "x.ppm"],
        ["run", "--phi", "10", "--psi", "10", "--single-site"],  # no --out
        ["run", "--phi", "10", "--psi", "10", "--out", "x.ppm"],  # no start, no seed
        ["classify", "--phi", "0", "--psi", "31", "--seed", "[10,0]", "--out", "-"],
        ["damage", "--phi", "1", "--psi", "1", "--memory", "alpha:7",
         "--rng-seed", "1", "--out", "-"],
        ["collide", "--phi", "7", "--psi", "4", "--distance", "0", "--out", "-"],
    ]
    for argv in bad_calls:
        assert main(argv) == 2, argv
        assert "error:" in capsys.readouterr().err


def test_unknown_subcommand_rejected():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
