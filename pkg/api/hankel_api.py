"""
JSON service over the hankel_fh library.

    python -m api.hankel_api

Request bodies use the same weight-spec schema as the command line.
"""

from __future__ import annotations

import logging

from dotenv import load_dotenv
from flask import Flask, jsonify, request

from hankel_fh.applications import clt_params, partition_asymptotics
from hankel_fh.config import configure_logging, get_settings
from hankel_fh.equilibrium import REFERENCE_POTENTIALS, EnsembleClass, solve_density
from hankel_fh.errors import EquilibriumError, InvalidInputError, InvalidSpecError
from hankel_fh.fh_asymptotics import WeightSpec, asymptotic_log_dn, constants, error_scale
from hankel_fh.numerics_core import lobatto_nodes
from hankel_fh.special_functions import zeta_prime_minus_one

# Load environment variables
load_dotenv()

app = Flask(__name__)

HEALTH_TOLERANCE = 1e-10


def _n_list(data):
    values = data.get("n", [])
    if isinstance(values, int) and not isinstance(values, bool):
        values = [values]
    if not isinstance(values, list) or any(isinstance(n, bool) or not isinstance(n, int) or n < 1 for n in values):
        raise InvalidSpecError(f"'n' must be a positive integer or a list of them, got {values!r}")
    return values


def _spec_body(data):
    return WeightSpec.from_dict({k: v for k, v in data.items() if k != "n"})


# Routes
@app.route("/")
def home():
    return jsonify(
        {
            "message": "Hankel determinant asymptotics API is running!",
            "endpoints": ["/health", "/density", "/constants", "/partition", "/clt"],
        }
    )


@app.route("/health", methods=["GET"])
def health_check():
    """Evaluate the Gaussian reference weight; C4 must reproduce zeta'(-1)"""
    try:
        spec = WeightSpec(
            ensemble=EnsembleClass.GAUSSIAN,
            V=REFERENCE_POTENTIALS[EnsembleClass.GAUSSIAN],
        )
        c4 = constants(spec).C4
        expected = zeta_prime_minus_one()
        if abs(c4 - expected) > HEALTH_TOLERANCE:
            return jsonify({"status": "unhealthy", "C4": [c4.real, c4.imag], "expected": expected}), 500
        return jsonify({"status": "healthy", "C4": [c4.real, c4.imag]}), 200
    except Exception as e:
        return jsonify({"status": "unhealthy", "error": str(e)}), 500


@app.route("/density", methods=["POST"])
def density():
    """
    Equilibrium density of a weight spec.

    Expected JSON body:
    {
        "class": "laguerre",
        "V_mono": [0, 2],
        "nodes": 16            // optional Lobatto degree of the output grid
    }
    """
    try:
        data = request.get_json(silent=True)
        if not data:
            return jsonify({"error": "No JSON data provided"}), 400

        nodes = data.pop("nodes", 16)
        if isinstance(nodes, bool) or not isinstance(nodes, int) or nodes < 1:
            raise InvalidSpecError(f"'nodes' must be a positive integer, got {nodes!r}")
        spec = _spec_body(data)
        result = solve_density(spec.V, spec.ensemble)
        x = lobatto_nodes(nodes)[::-1]
        return jsonify(
            {
                "class": spec.ensemble.value,
                "x": x.tolist(),
                "psi": result.psi(x).tolist(),
                "normalization_defect": result.normalization_defect,
                "edge_residual": result.edge_residual,
            }
        ), 200

    except (InvalidInputError, EquilibriumError) as e:
        return jsonify({"error": str(e)}), 400
    except Exception as e:
        return jsonify({"error": str(e)}), 500


@app.route("/constants", methods=["POST"])
def asymptotic_constants():
    """
    C1..C4 of a weight spec, plus log D_n for an optional list of n.

    Expected JSON body: a weight spec with an optional "n": [8, 16, 32]
    """
    try:
        data = request.get_json(silent=True)
        if not data:
            return jsonify({"error": "No JSON data provided"}), 400

        n_list = _n_list(data)
        consts = constants(_spec_body(data))
        result = consts.to_dict()
        if n_list:
            result["log_dn"] = []
            for n in n_list:
                value = asymptotic_log_dn(consts, n)
                result["log_dn"].append(
                    {"n": n, "value": [value.real, value.imag], "error_scale": error_scale(consts, n)}
                )
        return jsonify(result), 200

    except (InvalidInputError, EquilibriumError) as e:
        return jsonify({"error": str(e)}), 400
    except Exception as e:
        return jsonify({"error": str(e)}), 500


@app.route("/partition", methods=["POST"])
def partition():
    """
    Partition function asymptotics.

    Expected JSON body:
    {
        "class": "jacobi",
        "V": [0],
        "alpha0": 0.5,         // optional
        "alpha_edge": [0, 1]   // optional, complex as [re, im]
    }
    """
    try:
        data = request.get_json(silent=True)
        if not data:
            return jsonify({"error": "No JSON data provided"}), 400

        body = {k: data[k] for k in ("class", "V", "V_mono") if k in data}
        body["alphas"] = [data.get("alpha0", 0), data.get("alpha_edge", 0)]
        spec = WeightSpec.from_dict(body)
        consts = partition_asymptotics(spec.ensemble, spec.V, spec.alphas[0], spec.alpha_edge)
        return jsonify(consts.to_dict()), 200

    except (InvalidInputError, EquilibriumError) as e:
        return jsonify({"error": str(e)}), 400
    except Exception as e:
        return jsonify({"error": str(e)}), 500


@app.route("/clt", methods=["POST"])
def clt():
    """CLT parameters of sum_i W(x_i) for the weight spec in the body (W required)"""
    try:
        data = request.get_json(silent=True)
        if not data:
            return jsonify({"error": "No JSON data provided"}), 400

        if "W" not in data and "W_mono" not in data:
            return jsonify({"error": "Missing 'W' or 'W_mono' field in JSON"}), 400
        spec = _spec_body(data)
        result = solve_density(spec.V, spec.ensemble)
        params = clt_params(spec.ensemble, result, spec.W, spec.alphas[0], spec.alpha_edge)
        return jsonify(params.to_dict()), 200

    except (InvalidInputError, EquilibriumError) as e:
        return jsonify({"error": str(e)}), 400
    except Exception as e:
        return jsonify({"error": str(e)}), 500


if __name__ == "__main__":
    configure_logging()
    settings = get_settings()
    logging.info("Starting Hankel FH API on %s:%s", settings.api_host, settings.api_port)
    app.run(debug=settings.api_debug, host=settings.api_host, port=settings.api_port)
