import hashlib
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from fixture_tree import W3C_HTML, build_tree  # noqa: E402

from deeplinker.service import DeepLinkerService, ServiceConfig  # noqa: E402


@pytest.fixture(scope="session")
def fixture_root(tmp_path_factory) -> str:
    root = tmp_path_factory.mktemp("tree")
    return build_tree(str(root))


def seed_download_cache(cache_dir: str, url: str = "http://w3c.org", body: bytes | None = None,
                        media_type: str = "text/html"):
    os.makedirs(cache_dir, exist_ok=True)
    key = hashlib.sha256(url.encode()).hexdigest()
    with open(os.path.join(cache_dir, key + ".bin"), "wb") as fh:
        fh.write(body if body is not None else W3C_HTML.encode())
    with open(os.path.join(cache_dir, key + ".type"), "w") as fh:
        fh.write(media_type)


def make_service(root: str, state: str, **overrides) -> DeepLinkerService:
    cfg = dict(
        root_dir=root,
        bind_address="127.0.0.1",
        port=0,
        upload_dir=os.path.join(state, "uploads"),
        cache_dir=os.path.join(state, "cache"),
        journal_path=os.path.join(state, "annotations.nt"),
    )
    cfg.update(overrides)
    return DeepLinkerService(ServiceConfig(**cfg))


@pytest.fixture(scope="session")
def live_service(fixture_root, tmp_path_factory):
    """A running service over the fixture tree; yields (base_url, service)."""
    state = str(tmp_path_factory.mktemp("state"))
    service = make_service(fixture_root, state)
    seed_download_cache(service.config.cache_dir)
    port = service.start_background()
    base = f"http://127.0.0.1:{port}"
    service.config.base_iri = base
    service.resolver.base_iri = base
    yield base, service
    service.shutdown()
