#!/usr/bin/env python3
"""
Run Profile Manager
Run configuration plus creation, loading, saving and deletion of named run
profiles stored as JSON files.
"""

import json
import os
import sys
import time
from dataclasses import asdict, dataclass, fields, replace
from typing import Dict, List, Optional, Union, get_args, get_origin

from basis_errors import ParameterDomainError, RunConfigError
from discord_analysis import resolve_side
from extremal_search import BASIS_CLASSES, SEARCH_MODES, OptimizerConfig

DEFAULT_PROFILES_DIR = "run_profiles"


def _field_kind(annotation):
    """(type, optional) of a RunConfig field annotation"""
    if get_origin(annotation) is Union:
        return next(arg for arg in get_args(annotation) if arg is not type(None)), True
    return annotation, False


@dataclass
class RunConfig:
    """Everything one command needs; the seed fixes every optimizer trajectory"""
    command: str = ""
    input: Optional[str] = None
    basis: Optional[str] = None
    bases: Optional[str] = None
    mode: str = "max"
    basis_class: str = "general"
    side: str = "B"
    seed: int = 42
    starts: int = 64
    tol: float = 1e-10
    max_evals: int = 2000
    workers: int = 1
    out: Optional[str] = None
    # Command-specific parameters
    n: Optional[int] = None
    k: Optional[int] = None
    x0: int = 0
    full_trace: bool = False
    N: Optional[int] = None
    x: Optional[int] = None
    t: Optional[int] = None
    L: Optional[int] = None
    steps: int = 100
    oracle_grid: bool = False
    paper_exact: bool = False

    def validate(self) -> "RunConfig":
        self._check_types()
        if self.seed < 0:
            raise RunConfigError(f"--seed must be nonnegative, got {self.seed}")
        if self.starts < 1:
            raise RunConfigError(f"--starts must be at least 1, got {self.starts}")
        if not self.tol > 0:
            raise RunConfigError(f"--tol must be positive, got {self.tol}")
        if self.max_evals < 1:
            raise RunConfigError(f"--max-evals must be at least 1, got {self.max_evals}")
        if self.workers < 1:
            raise RunConfigError(f"--workers must be at least 1, got {self.workers}")
        if self.steps < 1:
            raise RunConfigError(f"--steps must be at least 1, got {self.steps}")
        if self.mode not in SEARCH_MODES:
            raise RunConfigError(f"--mode must be one of {', '.join(SEARCH_MODES)}, got {self.mode!r}")
        if self.basis_class not in BASIS_CLASSES:
            raise RunConfigError(f"--class must be one of {', '.join(BASIS_CLASSES)}, got {self.basis_class!r}")
        try:
            resolve_side(self.side)
        except ParameterDomainError as e:
            raise RunConfigError(f"--side: {e}") from e
        return self

    def _check_types(self):
        for f in fields(self):
            value = getattr(self, f.name)
            kind, optional = _field_kind(f.type)
            if value is None and optional:
                continue
            if kind is float:
                valid = isinstance(value, (int, float)) and not isinstance(value, bool)
            elif kind is int:
                valid = isinstance(value, int) and not isinstance(value, bool)
            else:
                valid = isinstance(value, kind)
            if not valid:
                raise RunConfigError(f"setting '{f.name}' must be {kind.__name__}, got {value!r}")

    def optimizer_config(self) -> OptimizerConfig:
        return OptimizerConfig(starts=self.starts, seed=self.seed, max_evals=self.max_evals,
                               tol=self.tol, workers=self.workers)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise RunConfigError(f"run settings must be an object, got {type(data).__name__}")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise RunConfigError(f"unknown run settings: {', '.join(unknown)}")
        return cls(**data).validate()

    def merged(self, overrides: dict) -> "RunConfig":
        """Copy with every non-None override applied"""
        known = {f.name for f in fields(self)}
        applied = {key: value for key, value in overrides.items() if key in known and value is not None}
        return replace(self, **applied).validate()


TEMPLATES: Dict[str, dict] = {
    "werner-sweep": {
        "description": "Werner discord vs minimum basis entropy, 101 points",
        "config": {"command": "werner-sweep", "steps": 100, "out": "werner_sweep.csv"},
    },
    "grover-n20": {
        "description": "Full Grover trace for a 20-qubit database",
        "config": {"command": "grover", "n": 20, "full_trace": True, "out": "grover_n20.csv"},
    },
    "shor-15": {
        "description": "Shor first-register trace for N = 15, x = 7, t = 8",
        "config": {"command": "shor", "N": 15, "x": 7, "t": 8, "out": "shor_15.csv"},
    },
    "decohere-demo": {
        "description": "Tilted pure qubit dephased along z then y",
        "config": {"command": "decohere", "input": "tilted", "bases": "axis:0,0,1;axis:0,1,0"},
    },
}


def _log(message: str):
    print(message, file=sys.stderr)


def _basic_info(name: str, profile_data: dict) -> dict:
    config = profile_data.get('config')
    return {
        'name': name,
        'command': config.get('command', '') if isinstance(config, dict) else '',
        'description': profile_data.get('description', ''),
        'created_at': profile_data.get('created_at', 0),
        'modified_at': profile_data.get('modified_at', 0)
    }


class RunProfileManager:
    """Manages named run profiles on disk"""

    def __init__(self, profiles_dir: str = DEFAULT_PROFILES_DIR):
        self.profiles_dir = profiles_dir
        self.current_profile = None
        self.profiles = {}
        self.load_all_profiles()

    def ensure_profiles_directory(self):
        if not os.path.exists(self.profiles_dir):
            os.makedirs(self.profiles_dir)
            _log(f"📁 Created profiles directory: {self.profiles_dir}")

    def _filepath(self, name: str) -> str:
        filename = f"{name.lower().replace(' ', '_')}.json"
        return os.path.join(self.profiles_dir, filename)

    def create_profile(self, name: str, config: RunConfig, description: str = "") -> bool:
        """Write a new profile; an existing profile of the same name is replaced"""
        profile = {
            'name': name,
            'description': description,
            'config': config.validate().to_dict(),
            'created_at': time.time(),
            'modified_at': time.time()
        }

        try:
            self.ensure_profiles_directory()
            filepath = self._filepath(name)
            with open(filepath, 'w') as f:
                json.dump(profile, f, indent=2)

            self.profiles[name] = {'data': profile, 'filepath': filepath,
                                   'basic_info': _basic_info(name, profile)}
            _log(f"✅ Created profile: {name}")
            return True
        except OSError as e:
            _log(f"❌ Error creating profile: {e}")
            return False

    def load_profile(self, name: str) -> Optional[RunConfig]:
        """Read a profile fresh from disk and make it current"""
        if name not in self.profiles:
            return None

        self.current_profile = None
        try:
            with open(self.profiles[name]['filepath'], 'r', encoding='utf-8') as f:
                profile_data = json.load(f)
        except (OSError, ValueError) as e:
            raise RunConfigError(f"profile '{name}' could not be read: {e}") from e
        if not isinstance(profile_data, dict):
            raise RunConfigError(f"profile '{name}' could not be read: top level must be an object")

        config = RunConfig.from_dict(profile_data.get('config', {}))
        self.profiles[name]['data'] = profile_data
        self.current_profile = name
        return config

    def save_profile(self, name: str, config: RunConfig) -> bool:
        if name not in self.profiles:
            return False
        profile_data = dict(self.profiles[name]['data'])
        profile_data['config'] = config.validate().to_dict()
        profile_data['modified_at'] = time.time()
        try:
            with open(self.profiles[name]['filepath'], 'w') as f:
                json.dump(profile_data, f, indent=2)
        except OSError as e:
            _log(f"❌ Error saving profile: {e}")
            return False

        self.profiles[name]['data'] = profile_data
        self.profiles[name]['basic_info'] = _basic_info(name, profile_data)
        _log(f"✅ Saved profile: {name}")
        return True

    def load_all_profiles(self):
        """Index every profile file; unreadable files are skipped with a warning"""
        self.profiles = {}
        if not os.path.exists(self.profiles_dir):
            return

        for filename in sorted(os.listdir(self.profiles_dir)):
            if not filename.endswith('.json'):
                continue
            filepath = os.path.join(self.profiles_dir, filename)
            try:
                with open(filepath, 'r', encoding='utf-8') as f:
                    profile_data = json.load(f)
            except (OSError, ValueError) as e:
                _log(f"⚠️  Error loading profile {filename}: {e}")
                continue
            if not isinstance(profile_data, dict):
                _log(f"⚠️  Error loading profile {filename}: top level must be an object")
                continue

            profile_name = profile_data.get('name', filename[:-5])
            self.profiles[profile_name] = {
                'data': profile_data,
                'filepath': filepath,
                'basic_info': _basic_info(profile_name, profile_data)
            }

    def delete_profile(self, name: str) -> bool:
        if name not in self.profiles:
            return False
        try:
            os.remove(self.profiles[name]['filepath'])
        except OSError as e:
            _log(f"❌ Error deleting profile: {e}")
            return False

        del self.profiles[name]
        if self.current_profile == name:
            self.current_profile = None
        _log(f"🗑️  Deleted profile: {name}")
        return True

    def get_profile_names(self) -> List[str]:
        return list(self.profiles.keys())

    def get_profile_description(self, name: str) -> str:
        if name in self.profiles:
            return self.profiles[name]['data'].get('description', '')
        return ""

    def create_template_profile(self, template_name: str, name: Optional[str] = None,
                                overrides: Optional[dict] = None, description: str = "") -> bool:
        """Create one of the built-in presets, under its own name unless another is given"""
        if template_name not in TEMPLATES:
            return False
        template = TEMPLATES[template_name]
        config = RunConfig().merged(template['config']).merged(overrides or {})
        return self.create_profile(name or template_name, config, description or template['description'])

    def get_all_profiles_basic_info(self) -> Dict[str, dict]:
        return {name: info.get('basic_info', {'name': name}) for name, info in self.profiles.items()}
