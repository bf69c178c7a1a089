"""Mini gluing campaign: R(3,4,8) pointed pairs glued into R(4,4), both engines cross-checked."""

from __future__ import annotations

import argparse
import tempfile
from dataclasses import dataclass
from pathlib import Path

from ramseyglue import catalogue as cat
from ramseyglue.pipeline import CampaignSpec, run_campaign


@dataclass
class Config:
    s: int = 3
    t: int = 4
    n: int = 8
    sample: int = 200
    seed: int = 0
    jobs: int = 1
    out: str = "runs/mini"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))

    with tempfile.TemporaryDirectory() as tmp:
        c = cat.generate(cfg.s, cfg.t, cfg.n)
        cat.save(c, tmp)
        src = cat.catalogue_path(tmp, cfg.s, cfg.t, cfg.n)
        Path(cfg.out).mkdir(parents=True, exist_ok=True)
        spec = CampaignSpec(s=cfg.s + 1, t=cfg.t, catalogue=str(src), sample=cfg.sample,
                            seed=cfg.seed, out=cfg.out, jobs=cfg.jobs, engine="both")
        report = run_campaign(spec)
    print(report.to_json())


if __name__ == "__main__":
    main()
