import json
import math

import pytest

superpos = pytest.importorskip("superpos")


def test_taper_and_psi():
    p = superpos.MollifierProfile(0.5, math.e)
    assert superpos.taper(p, 0.5) == 1.0
    assert superpos.taper(p, 10.0) == 0.0
    val = superpos.psi(p, 1.0 + 0j)
    assert abs(val.real - 2.0 * (math.e - math.sqrt(math.e))) < 1e-12


def test_petersson_delta():
    r = superpos.petersson_delta(1, 1, 101)
    assert r.tail_bound >= 0.0
    assert abs(r.value - 1.0) < 0.1


def test_v_surface_and_central_bound():
    p = superpos.SurfaceParams(upsilon=0.48)
    assert superpos.v_surface(p, 3.0, 1.0) >= 1.0
    b = superpos.central_bound(p, 7.0)
    assert abs(b.value - 0.5041) < 1e-3


def test_realzero_report_json():
    report = json.loads(superpos.realzero_report(0.48, 7.0))
    assert report["objective"] == "realzero"
    assert report["proportion"] >= 0.4959
    assert report["asymptotic_caveat"] is True


def test_domain_error_maps_to_value_error():
    with pytest.raises(ValueError):
        superpos.SurfaceParams(upsilon=1.5)
