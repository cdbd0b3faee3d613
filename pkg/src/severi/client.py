"""Thin client for the compute service.

The CLI always talks to the service API.  By default the app runs in-process
behind an ASGI test transport (no sockets, no startup cost); pass a base URL
to talk to a long-running server instead, with identical behavior.
"""

from __future__ import annotations

from typing import Any

import httpx


class ServiceError(Exception):
    """A structured error from the service: carries the contract code."""

    def __init__(self, code: str, message: str, status: int):
        super().__init__(message)
        self.code = code
        self.message = message
        self.status = status


class ServiceClient:
    def __init__(self, server: str | None = None):
        if server:
            self._http: httpx.Client = httpx.Client(base_url=server, timeout=None)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import create_app

            self._http = TestClient(create_app(), raise_server_exceptions=False)

    def close(self):
        self._http.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def _unwrap(self, resp: httpx.Response) -> dict[str, Any]:
        if resp.status_code == 200:
            return resp.json()
        try:
            detail = resp.json().get("detail")
        except ValueError:
            detail = None
        if isinstance(detail, dict) and "code" in detail:
            raise ServiceError(detail["code"], detail.get("message", ""), resp.status_code)
        if resp.status_code == 422:  # request-schema validation
            raise ServiceError("argument", str(detail), resp.status_code)
        raise ServiceError("internal", resp.text, resp.status_code)

    def get(self, path: str) -> dict[str, Any]:
        return self._unwrap(self._http.get(path))

    def post(self, path: str, payload: dict[str, Any]) -> dict[str, Any]:
        return self._unwrap(self._http.post(path, json=payload))
