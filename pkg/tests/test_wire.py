"""External-policy wire protocol: byte-exact serialization and parse behavior
against the shipped conformance corpus."""

import json

import pytest

from objsearch.agent import (
    ChatCompletionPolicy,
    LLMPolicyConfig,
    WireParseError,
    build_request,
    decode_response,
    encode_request,
)
from objsearch.agent.wire import WIRE_VERSION, load_conformance_corpus
from objsearch.core import Action, Instruction, Outcome, WorkingMemory


@pytest.fixture(scope="module")
def corpus():
    return load_conformance_corpus()


def test_corpus_has_ten_valid_cases(corpus):
    assert len(corpus["cases"]) == 10
    assert corpus["version"] == WIRE_VERSION


def test_requests_reencode_byte_exact(corpus):
    """Decoding a canonical request and re-encoding its parts reproduces the
    exact bytes shipped in the corpus."""
    for case in corpus["cases"]:
        body = json.loads(case["request"])
        h = WorkingMemory(
            instruction=Instruction(text=body["instruction"]),
            steps=tuple(
                (Action.from_dict(s["action"]), Outcome.from_dict(s["outcome"]))
                for s in body["trace"]
            ),
            remaining_budget=body["remaining_budget"],
        )
        encoded = encode_request(
            body["instruction"], body["remaining_budget"], body["tool_schemas"], h
        )
        assert encoded == case["request"], case["name"]
        assert encoded.encode("utf-8") == case["request"].encode("utf-8")


def test_responses_decode_to_expected_actions(corpus):
    for case in corpus["cases"]:
        action, rationale = decode_response(case["response"])
        assert action.tool == case["expect"]["tool"], case["name"]
        assert action.args == case["expect"]["args"], case["name"]
        assert rationale == case["expect"]["rationale"], case["name"]


def test_malformed_responses_raise_with_diagnostics(corpus):
    for case in corpus["malformed"]:
        with pytest.raises(WireParseError) as err:
            decode_response(case["response"])
        assert case["error_contains"] in str(err.value), case["name"]


def test_request_structure_versioned():
    h = WorkingMemory.fresh(Instruction(text="find the mug"), 20)
    body = build_request("find the mug", 20, {"tools": []}, h)
    assert body["version"] == WIRE_VERSION
    assert set(body) == {"version", "instruction", "remaining_budget", "tool_schemas", "trace"}


def test_client_reprompt_then_abort_through_corpus(corpus):
    """Feed each malformed reply twice through the client: one reprompt, then
    abort; a valid second reply instead recovers."""
    valid = corpus["cases"][0]["response"]
    for case in corpus["malformed"]:
        # malformed then malformed -> abort
        replies = iter([case["response"], case["response"]])

        def post(url, payload, timeout):
            return {"choices": [{"message": {"content": next(replies)}}]}

        policy = ChatCompletionPolicy(LLMPolicyConfig(url="http://x"), post=post)
        h = WorkingMemory.fresh(Instruction(text="find the mug"), 5)
        assert policy("find the mug", h, 5, {}) is None, case["name"]

        # malformed then valid -> recovered decision
        replies = iter([case["response"], valid])
        reprompts = []

        def post2(url, payload, timeout):
            reprompts.append(payload)
            return {"choices": [{"message": {"content": next(replies)}}]}

        policy = ChatCompletionPolicy(LLMPolicyConfig(url="http://x"), post=post2)
        decision = policy("find the mug", h, 5, {})
        assert decision is not None and decision.action.tool, case["name"]
        assert len(reprompts) == 2
