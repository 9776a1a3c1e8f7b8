"""Decision loop, unified action space, and policies."""

from .llm import ChatCompletionPolicy, LLMPolicyConfig
from .loop import (
    DEFAULT_BUDGET,
    EpisodeResult,
    Policy,
    PolicyDecision,
    TERMINATION_ABORT,
    TERMINATION_BUDGET,
    TERMINATION_RETRIEVED,
    classify_action,
    run_episode,
    update_working_memory,
)
from .policies import (
    RandomSearchPolicy,
    SgPlusSPolicy,
    StarScriptedPolicy,
    TrPlusSPolicy,
    parse_caption,
    parse_instruction,
)
from .registry import ActionExecutor, SPATIAL_TOOLS, TEMPORAL_TOOLS, default_registry
from .wire import WIRE_VERSION, WireParseError, build_request, decode_response, encode_request

__all__ = [
    "ActionExecutor",
    "ChatCompletionPolicy",
    "DEFAULT_BUDGET",
    "EpisodeResult",
    "LLMPolicyConfig",
    "Policy",
    "PolicyDecision",
    "RandomSearchPolicy",
    "SPATIAL_TOOLS",
    "SgPlusSPolicy",
    "StarScriptedPolicy",
    "TEMPORAL_TOOLS",
    "TERMINATION_ABORT",
    "TERMINATION_BUDGET",
    "TERMINATION_RETRIEVED",
    "TrPlusSPolicy",
    "WIRE_VERSION",
    "WireParseError",
    "build_request",
    "classify_action",
    "decode_response",
    "default_registry",
    "encode_request",
    "parse_caption",
    "parse_instruction",
    "run_episode",
    "update_working_memory",
]
