import json

import jsonschema
import pytest

from planedescent.descent.certificate import CertificateConfig, build_certificate, cubic_extension_model
from planedescent.schemas import load_schema

ORDER = ["parameters", "level-two", "quaternion-embedding", "huggins-form", "smoothness-probe",
         "hessian-invariance", "scaled-family-identity", "conjugated-invariance", "cocycle-validity",
         "norm-obstruction", "cubic-extension-model"]


@pytest.fixture(scope="module")
def cert3():
    return build_certificate(2, 13, 3)


def test_full_pipeline_passes(cert3):
    assert cert3.status == "passed"
    assert [c.name for c in cert3.checks] == ORDER
    assert all(c.status == "verified" for c in cert3.checks)
    assert cert3.check("hessian-invariance").witness["passed"] == 18
    assert cert3.check("cocycle-validity").witness["pairs_checked"] == 81
    assert cert3.check("norm-obstruction").witness["conclusion"] == "NontrivialCocycle"
    assert len(cert3.conclusions) == 2
    assert all(c["basis"] == "external" for c in cert3.conclusions)


def test_cubic_model_lands_in_cube_root_field(cert3):
    w = cert3.check("cubic-extension-model").witness
    assert w["ok"] and w["subfield"] == ["zeta3", "sqrt_u", "sqrt_v", "cbrt_p"]


def test_schema_valid(cert3):
    jsonschema.validate(json.loads(cert3.dumps()), load_schema("certificate"))


def test_deterministic(cert3):
    assert build_certificate(2, 13, 3).dumps() == cert3.dumps()
    assert all(c["timing"] is None for c in cert3.to_json()["checks"])


def test_timings_optional():
    cert = build_certificate(2, 13, 5, CertificateConfig(timings=True, cubic_model=False))
    assert all(c.timing is not None and c.timing >= 0 for c in cert.checks)
    jsonschema.validate(json.loads(cert.dumps()), load_schema("certificate"))


def test_inconclusive_norm_omits_twist_conclusion():
    cert = build_certificate(2, 13, 13, CertificateConfig(cubic_model=False))
    assert cert.status == "incomplete"
    assert cert.check("norm-obstruction").status == "inconclusive"
    assert len(cert.conclusions) == 1
    assert "hessian-sextic" in cert.conclusions[0]["citations"][0]


def test_invalid_parameters_abort():
    cert = build_certificate(1, 13, 3)
    assert cert.status == "failed"
    assert [c.name for c in cert.checks] == ["parameters"]
    assert "non-square" in cert.checks[0].witness["error"]
    jsonschema.validate(json.loads(cert.dumps()), load_schema("certificate"))


def test_cubic_model_direct(scaled):
    out = cubic_extension_model(2, 13, 3, scaled.form, seed=0, attempts=10)
    assert out["ok"] and out["monomials"] >= 1
