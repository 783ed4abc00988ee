"""JSON and CSV forms of every result type."""
import json
import logging
import math
from dataclasses import is_dataclass
from datetime import datetime
from enum import Enum
from fractions import Fraction
from pathlib import Path

import pandas as pd

from config import Config
from core.boundary import BoundaryPoint
from core.circle import Arc, ArcUnion
from core.moebius import MoebiusMap
from system.explorer.affine import ExactCertificate, Inapplicable, Refuted
from system.explorer.words import Word, WordWitness
from system.hyperbolicity.multicone import MulticoneCertificate, MulticoneFailure, NegativeCertificate
from system.hyperbolicity.spectral import SpectralEstimate
from system.limit_sets.cores import CoreSet
from system.limit_sets.elementary import ElementaryStatus
from system.limit_sets.limit_sets import LimitSetApprox
from system.limit_sets.nonsd import NotSemidiscreteConclusion

logger = logging.getLogger(__name__)


def real_to_json(x):
    if isinstance(x, Fraction):
        return str(x)
    if math.isinf(x):
        return 'inf'
    return x


def point_to_json(point):
    return real_to_json(point.to_real())


def map_to_json(m):
    data = {'a': m.a, 'b': m.b, 'c': m.c, 'd': m.d}
    if m.exact is not None:
        data['exact'] = [str(x) for x in m.exact]
    return data


def witness_to_json(witness):
    return {
        'word': list(witness.word.letters),
        'length': len(witness.word),
        'kind': witness.kind.value,
        'product': map_to_json(witness.product),
        'distance': witness.distance,
        'partial': witness.partial,
    }


def multicone_to_json(cert):
    return {
        'multicone': cert.multicone.to_json(),
        'components': len(cert.multicone),
        'margin': cert.margin,
        'achieved_margin': cert.achieved_margin,
        'radius': cert.radius,
        'fattening': cert.fattening,
        'seed_depth': cert.word_depth_used,
        'generator_images': [image.to_json() for image in cert.per_generator_images],
    }


def failure_to_json(failure):
    return {
        'reason': failure.reason.value,
        'detail': failure.detail,
        'generator_index': failure.generator_index,
        'touch_point': point_to_json(failure.touch_point) if failure.touch_point else None,
        'forward_word': list(failure.forward_word.letters) if failure.forward_word else None,
        'backward_word': list(failure.backward_word.letters) if failure.backward_word else None,
    }


def exact_result_to_json(result):
    if isinstance(result, ExactCertificate):
        return {'outcome': 'certified', 'primes': list(result.primes),
                'exponent_vectors': [list(v) for v in result.exponent_vectors],
                'conjugation_point': str(result.conjugation_point) if result.conjugation_point is not None else None}
    if isinstance(result, Refuted):
        return {'outcome': 'refuted', 'word': list(result.letters)}
    return {'outcome': 'inapplicable', 'reason': result.reason,
            'cancelling_counts': list(result.cancelling_counts) if result.cancelling_counts else None}


def limit_set_to_json(approx):
    return {
        'side': approx.side,
        'method': approx.method.value,
        'depth': approx.depth,
        'gap': approx.gap,
        'point_count': len(approx.points),
        'hull': approx.hull.to_json(),
    }


def cores_to_json(cores):
    return {
        'forward': cores.forward.to_json(),
        'backward': cores.backward.to_json(),
        'degenerate': cores.degenerate,
        'removed_gaps': [{'side': w.side, 'gap': w.gap.to_json(), 'point': point_to_json(w.point)}
                         for w in cores.witness_gaps],
    }


def elementary_to_json(status):
    data = {'kind': status.kind.value}
    if status.point is not None:
        data['point'] = point_to_json(status.point)
    if status.interior is not None:
        data['interior'] = [status.interior.real, status.interior.imag]
    if status.pair is not None:
        data['pair'] = [point_to_json(p) for p in status.pair]
    return data


def conclusion_to_json(conclusion):
    return {
        'point': point_to_json(conclusion.point),
        'backward_word': list(conclusion.backward_word.letters),
        'bracket': [list(w.letters) if w else None for w in conclusion.bracket],
        'generators': list(conclusion.generators),
        'hypotheses': dict(conclusion.hypotheses),
        'assumptions': list(conclusion.assumptions),
        'provenance': conclusion.provenance,
    }


def spectral_to_frame(estimate):
    return pd.DataFrame([{
        'length': row.length,
        'min_norm_root': row.min_norm_root,
        'min_norm_word': str(row.min_norm_word),
        'min_radius_root': row.min_radius_root,
        'min_radius_word': str(row.min_radius_word),
    } for row in estimate.rows])


def to_json(value):
    """Best-effort conversion of any result object."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return real_to_json(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    converters = (
        (WordWitness, witness_to_json), (MulticoneCertificate, multicone_to_json),
        (MulticoneFailure, failure_to_json), (LimitSetApprox, limit_set_to_json),
        (CoreSet, cores_to_json), (ElementaryStatus, elementary_to_json),
        (NotSemidiscreteConclusion, conclusion_to_json), (MoebiusMap, map_to_json),
        ((ExactCertificate, Refuted, Inapplicable), exact_result_to_json),
        (ArcUnion, lambda u: u.to_json()), (Arc, lambda a: a.to_json()),
        (BoundaryPoint, point_to_json), (Word, lambda w: list(w.letters)),
        (SpectralEstimate, lambda e: spectral_to_frame(e).to_dict(orient='records')),
    )
    for kind, convert in converters:
        if isinstance(value, kind):
            return convert(value)
    if isinstance(value, NegativeCertificate):
        return {'kind': value.kind.value, 'detail': value.detail, 'witness': to_json(value.witness)}
    if isinstance(value, complex):
        return [value.real, value.imag]
    if is_dataclass(value):
        return {k: to_json(v) for k, v in vars(value).items()}
    return repr(value)


def status_to_json(entry):
    return {'status': entry.status, 'detail': entry.detail, 'evidence': to_json(entry.evidence)}


def report_to_json(report):
    return {
        'tuple_size': report.size,
        'generator_classes': [c.value for c in report.generator_classes],
        'elementary': elementary_to_json(report.elementary),
        'in_H': status_to_json(report.in_H),
        'in_E': status_to_json(report.in_E),
        'inverse_free': status_to_json(report.inverse_free),
        'semidiscrete': status_to_json(report.semidiscrete),
        'in_P': status_to_json(report.in_P),
        'rank_one': report.rank_one.to_json() if report.rank_one else None,
        'forward_limit_set': limit_set_to_json(report.forward) if report.forward else None,
        'backward_limit_set': limit_set_to_json(report.backward) if report.backward else None,
        'cores': cores_to_json(report.cores) if report.cores else None,
        'spectral': to_json(report.spectral),
        'partial': report.partial,
        'stages': list(report.stages),
        'consistency': {
            'consistent': report.consistency.consistent,
            'rules_checked': list(report.consistency.rules_checked),
            'violations': list(report.consistency.violations),
        } if report.consistency else None,
    }


def envelope(kind, payload):
    return {
        'schema_version': Config.SCHEMA_VERSION,
        'kind': kind,
        'generated_at': datetime.now().isoformat(timespec='seconds'),
        'result': payload,
    }


def dump_json(kind, payload, path=None):
    """Serialize deterministically; ``generated_at`` is the only varying field."""
    text = json.dumps(envelope(kind, payload), indent=2, sort_keys=True)
    if path is None:
        return text
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + '\n')
    logger.info(f'Wrote {kind} to {path}')
    return text


def dump_csv(frame, path=None):
    if path is None:
        return frame.to_csv(index=False)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    logger.info(f'Wrote CSV to {path}')
    return path.read_text()
