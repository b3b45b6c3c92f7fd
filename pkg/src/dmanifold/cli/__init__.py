"""Batch front end: JSON scenes in, deterministic JSON reports out."""

from .main import main, run_scene
from .scene import Scene, SceneError, canonical, load_scene, load_scene_text, scene_from_data
from .tasks import OPS, TaskInputError, TaskOutcome, run_task

__all__ = [name for name in dir() if not name.startswith("_")]
