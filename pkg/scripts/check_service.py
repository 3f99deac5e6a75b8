"""Smoke-check a deployed Bialgebra Workbench API."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Mapping

import httpx


class SmokeCheckError(RuntimeError):
    """Raised when a deployment smoke check fails."""


# L_5(2), the smallest loop in the new_loop family that is not a group
_PROBE_FAMILY = {"family": "new_loop", "parameters": [5, 2]}


def fetch_url(url: str, timeout: float, payload: Any = None) -> tuple[int, str, Mapping[str, str]]:
    headers = {"User-Agent": "bialgebra-smoke-check/1.0"}
    try:
        with httpx.Client(timeout=timeout, trust_env=False) as client:
            if payload is None:
                response = client.get(url, headers=headers)
            else:
                response = client.post(url, headers=headers, json=payload)
    except httpx.HTTPError as exc:
        raise SmokeCheckError(f"Request to {url} failed before receiving a response: {exc}") from exc
    return response.status_code, response.text, dict(response.headers.items())


def _body_preview(body: str, limit: int = 160) -> str:
    return " ".join(body.split())[:limit]


def _expect_status(name: str, url: str, status: int, expected: int, body: str) -> None:
    if status == expected:
        return
    if status == 400:
        raise SmokeCheckError(
            f"{name.capitalize()} check at {url} was rejected as invalid input (HTTP 400). "
            "The API rejected a document it should accept; check that the deployed version matches "
            f"the document schema. Response preview: {_body_preview(body)}"
        )
    raise SmokeCheckError(
        f"{name.capitalize()} check failed at {url}: expected HTTP {expected}, got {status}. "
        f"Response preview: {_body_preview(body)}"
    )


def _expect_json_field(name: str, url: str, body: str, field: str, expected_value: Any = None) -> None:
    try:
        payload = json.loads(body)
    except json.JSONDecodeError as exc:
        raise SmokeCheckError(f"{name.capitalize()} check at {url} did not return valid JSON.") from exc

    if field not in payload:
        raise SmokeCheckError(f"{name.capitalize()} check at {url} is missing JSON field '{field}'.")

    if expected_value is not None and payload[field] != expected_value:
        raise SmokeCheckError(
            f"{name.capitalize()} check at {url} returned unexpected '{field}' value: {payload[field]!r}."
        )


def run_checks(*, host: str, port: int, timeout: float) -> list[str]:
    messages: list[str] = []

    health_url = f"http://{host}:{port}/healthz"
    status, body, _ = fetch_url(health_url, timeout)
    _expect_status("health", health_url, status, 200, body)
    _expect_json_field("health", health_url, body, "status", "ok")
    messages.append("Health endpoint is healthy.")

    classify_url = f"http://{host}:{port}/api/magmas/classify"
    status, body, _ = fetch_url(classify_url, timeout, payload=_PROBE_FAMILY)
    _expect_status("classify", classify_url, status, 200, body)
    _expect_json_field("classify", classify_url, body, "kind", "loop")
    messages.append("Classifier reports L_5(2) as a loop.")

    return messages


def parse_args(argv: list[str]) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--host", default="127.0.0.1", help="Host name or IP to probe.")
    parser.add_argument("--port", type=int, default=8900, help="API HTTP port.")
    parser.add_argument("--timeout", type=float, default=5.0, help="Per-request timeout in seconds.")
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv if argv is not None else sys.argv[1:])

    try:
        messages = run_checks(host=args.host, port=args.port, timeout=args.timeout)
    except SmokeCheckError as exc:
        print(f"Smoke check failed: {exc}", file=sys.stderr)
        return 1

    for message in messages:
        print(message)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
