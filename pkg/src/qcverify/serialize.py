"""JSON wire formats: rationals as "p/q", plus readers/writers for every artifact.

All formats round-trip exactly; parsing validates invariants through the
normal constructors.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Union

from .enumerator import Candidate
from .errors import ParameterError
from .fields import Cyclotomic, GaussianRational
from .games import Correlation, NonlocalGame
from .ring import RingElement
from .spectral import CertifiedApprox
from .traces import CyclotomicTrace, PartialTrace, partial_trace
from .verifier import QcModulus, VerdictCertificate
from .words import GroupParams, Word, word_from_json, word_to_json


def fraction_to_json(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def fraction_from_json(text: Any) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParameterError(f"expected a rational string, got {text!r}")
    return Fraction(text.strip())


def gaussian_to_json(g: GaussianRational) -> dict:
    return {"re": fraction_to_json(g.re), "im": fraction_to_json(g.im)}


def gaussian_from_json(data: dict) -> GaussianRational:
    return GaussianRational(fraction_from_json(data["re"]), fraction_from_json(data["im"]))


def cyclotomic_to_json(c: Cyclotomic) -> dict:
    return {"m": c.m, "coeffs": [fraction_to_json(q) for q in c.coeffs]}


def cyclotomic_from_json(data: dict) -> Cyclotomic:
    return Cyclotomic.from_coeffs(int(data["m"]), [fraction_from_json(q) for q in data["coeffs"]])


def params_to_json(params: GroupParams) -> dict:
    return {"n": params.n, "m": params.m}


def params_from_json(data: dict) -> GroupParams:
    return GroupParams(int(data["n"]), int(data["m"]))


def ring_element_to_json(x: RingElement) -> dict:
    if x.coeff_field == "gaussian":
        coeff = gaussian_to_json
    else:
        coeff = cyclotomic_to_json
    return {
        "params": params_to_json(x.params),
        "field": x.coeff_field,
        "terms": [[word_to_json(w), coeff(c)] for w, c in x.terms],
    }


def certified_approx_to_json(approx: CertifiedApprox) -> dict:
    data = ring_element_to_json(approx.value)
    data["error_bound"] = fraction_to_json(approx.error_bound)
    data["k"] = approx.target_k
    return data


def trace_to_json(tau: Union[PartialTrace, CyclotomicTrace]) -> dict:
    values = []
    for word, value in tau.values:
        if isinstance(value, GaussianRational):
            values.append([word_to_json(word), gaussian_to_json(value)])
        else:
            values.append([word_to_json(word), cyclotomic_to_json(value)])
    return {"params": params_to_json(tau.params), "values": values}


def trace_from_json(data: dict) -> Union[PartialTrace, CyclotomicTrace]:
    params = params_from_json(data["params"])
    gaussian: dict[Word, GaussianRational] = {}
    cyclotomic: dict[Word, Cyclotomic] = {}
    for word_data, value_data in data["values"]:
        word = word_from_json(word_data, params)
        if "coeffs" in value_data:
            cyclotomic[word] = cyclotomic_from_json(value_data)
        else:
            gaussian[word] = gaussian_from_json(value_data)
    if cyclotomic and gaussian:
        raise ParameterError("trace mixes Gaussian and cyclotomic values")
    if cyclotomic:
        from .words import word_key

        items = tuple(sorted(cyclotomic.items(), key=lambda t: word_key(t[0])))
        return CyclotomicTrace(params, items)
    return partial_trace(params, gaussian)


def correlation_to_json(p: Correlation) -> dict:
    return {
        "n": p.params.n,
        "m": p.params.m,
        "entries": [fraction_to_json(q) for q in p.entries],
    }


def correlation_from_json(data: dict) -> Correlation:
    params = GroupParams(int(data["n"]), int(data["m"]))
    entries = tuple(fraction_from_json(q) for q in data["entries"])
    return Correlation(params, entries)


def game_to_json(game: NonlocalGame) -> dict:
    accepting = []
    from .games import all_entries

    for v, w, i, j in all_entries(game.params):
        if game.D(v, w, i, j):
            accepting.append([v, w, i, j])
    return {
        "n": game.params.n,
        "m": game.params.m,
        "mu": [[v, w, fraction_to_json(q)] for (v, w), q in game.mu],
        "accept": accepting,
    }


def game_from_json(data: dict) -> NonlocalGame:
    params = GroupParams(int(data["n"]), int(data["m"]))
    mu = {(int(v), int(w)): fraction_from_json(q) for v, w, q in data["mu"]}
    accepting = [(int(v), int(w), int(i), int(j)) for v, w, i, j in data["accept"]]
    return NonlocalGame.build(params, mu, accepting)


def candidate_to_json(candidate: Candidate) -> dict:
    return {
        "l": candidate.index,
        "k": candidate.k,
        "height": candidate.height,
        "p": correlation_to_json(candidate.p),
        "tau": trace_to_json(candidate.tau),
    }


def candidate_from_json(data: dict) -> Candidate:
    p = correlation_from_json(data["p"])
    tau = trace_from_json(data["tau"])
    if not isinstance(tau, PartialTrace):
        raise ParameterError("candidate traces must be Gaussian-valued")
    return Candidate(
        index=int(data["l"]),
        p=p,
        tau=tau,
        k=int(data["k"]),
        height=int(data["height"]),
    )


def certificate_to_json(cert: VerdictCertificate) -> dict:
    return {
        "schema_version": cert.schema_version,
        "z": cert.z,
        "params": params_to_json(cert.params),
        "k": cert.k,
        "l": cert.index,
        "p": correlation_to_json(cert.p),
        "tau": trace_to_json(cert.tau),
        "value": fraction_to_json(cert.value),
        "modulus": cert.modulus,
    }


def certificate_from_json(data: dict) -> VerdictCertificate:
    tau = trace_from_json(data["tau"])
    if not isinstance(tau, PartialTrace):
        raise ParameterError("certificate traces must be Gaussian-valued")
    return VerdictCertificate(
        schema_version=int(data["schema_version"]),
        z=str(data["z"]),
        params=params_from_json(data["params"]),
        k=int(data["k"]),
        index=int(data["l"]),
        p=correlation_from_json(data["p"]),
        tau=tau,
        value=fraction_from_json(data["value"]),
        modulus=dict(data["modulus"]),
    )


def modulus_from_json(data: dict) -> QcModulus:
    kind = data.get("kind")
    if kind == "constant":
        return QcModulus.constant(int(data["k"]))
    if kind == "table":
        return QcModulus.from_table({(int(n), int(m)): int(k) for n, m, k in data["entries"]})
    if kind == "external":
        return QcModulus.external([str(part) for part in data["command"]])
    raise ParameterError(f"unknown modulus kind {kind!r}")


def dumps(data: dict) -> str:
    return json.dumps(data, sort_keys=True)
