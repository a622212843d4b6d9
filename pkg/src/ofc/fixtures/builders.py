"""Programmatic model builders for the shipped example workflows.

The JSON files next to this module are generated from these builders via

    python -m ofc.fixtures

so the shipped documents always round-trip through the canonical
serializer.  Tests import the builders directly when they need a model
object rather than a file.
"""

from __future__ import annotations

from ..model import FsmModel, ParamSpec, StateNode, Transition

__all__ = [
    "escrow_deposit",
    "escrow_wrapper",
    "chain",
    "buyer_seller_escrow",
    "real_estate",
    "badges",
    "inspectors",
    "mortgage_variant",
    "ALL_FIXTURES",
]


def _s(
    sid: str,
    label: str | None = None,
    reads: int = 1,
    writes: int = 1,
    actors: tuple[str, ...] = (),
) -> StateNode:
    return StateNode(
        id=sid,
        label=label or sid.replace("_", " "),
        reads_words=reads,
        writes_words=writes,
        actors=frozenset(actors),
    )


def _t(
    tid: str,
    frm: str,
    to: str,
    method: str,
    actor: str,
    quorum: int | None = None,
    inputs: tuple[ParamSpec, ...] = (),
) -> Transition:
    return Transition(
        id=tid,
        from_state=frm,
        to_state=to,
        method_name=method,
        inputs=inputs,
        outputs=(),
        actor=actor,
        quorum=quorum,
    )


AMOUNT = (ParamSpec("amount", 1),)


def escrow_deposit() -> FsmModel:
    """Four-state deposit diamond: both parties fund an escrow, in either
    order.  Every state reads and writes one word."""
    return FsmModel(
        initial_state="signed_contract",
        states=(
            _s("signed_contract", "contract signed"),
            _s("buyer_deposited", "buyer deposited", actors=("buyer",)),
            _s("seller_deposited", "seller deposited", actors=("seller",)),
            _s("escrow_done", "escrow funded", actors=("escrow_agent",)),
        ),
        transitions=(
            _t("t1", "signed_contract", "buyer_deposited", "depositBuyer", "buyer", inputs=AMOUNT),
            _t("t2", "signed_contract", "seller_deposited", "depositSeller", "seller", inputs=AMOUNT),
            _t("t3", "buyer_deposited", "escrow_done", "depositSeller", "seller", quorum=2, inputs=AMOUNT),
            _t("t4", "seller_deposited", "escrow_done", "depositBuyer", "buyer", quorum=2, inputs=AMOUNT),
        ),
    )


def escrow_wrapper() -> FsmModel:
    """The deposit diamond with a zero-cost opening and closing state on
    either side, so a partitioned run can enter and leave the pattern."""
    diamond = escrow_deposit()
    states = (
        _s("agreed", "terms agreed", reads=0, writes=0),
        *diamond.states,
        _s("closed", "escrow closed", reads=0, writes=0),
    )
    transitions = (
        _t("t0", "agreed", "signed_contract", "signContract", "buyer"),
        *diamond.transitions,
        _t("t5", "escrow_done", "closed", "closeEscrow", "escrow_agent"),
    )
    return FsmModel(
        initial_state="agreed",
        states=states,
        transitions=transitions,
    )


def chain(n: int, words: int = 1) -> FsmModel:
    """Linear chain s0 -> s1 -> ... -> s{n-1}, one method per hop."""
    if n < 2:
        raise ValueError("chain needs at least two states")
    states = tuple(_s(f"s{i}", reads=words, writes=words) for i in range(n))
    transitions = tuple(
        _t(f"t{i}", f"s{i}", f"s{i + 1}", f"step{i}", "operator") for i in range(n - 1)
    )
    return FsmModel(
        initial_state="s0",
        states=states,
        transitions=transitions,
    )


def buyer_seller_escrow() -> FsmModel:
    """Nineteen-state purchase workflow: negotiation with a counter-offer
    loop, a signing diamond, the deposit diamond, a shipping chain, and a
    dispute fork, chained through shared boundary states."""
    states = (
        _s("init", "buyer browsing", reads=0, writes=0),
        _s("negotiating", reads=1, writes=1, actors=("buyer", "seller")),
        _s("agreed", reads=1, writes=1),
        _s("contract_drafted", reads=1, writes=2, actors=("seller",)),
        _s("buyer_signed", actors=("buyer",)),
        _s("seller_signed", actors=("seller",)),
        _s("signed", "both signed"),
        _s("buyer_deposited", actors=("buyer",)),
        _s("seller_deposited", actors=("seller",)),
        _s("escrow_done", "escrow funded", actors=("escrow_agent",)),
        _s("shipped", actors=("seller",)),
        _s("in_transit", actors=("carrier",)),
        _s("delivered", actors=("carrier",)),
        _s("picked_up", actors=("buyer",)),
        _s("confirmed", actors=("buyer",)),
        _s("disputed", reads=2, writes=2, actors=("buyer", "seller")),
        _s("settled", actors=("escrow_agent",)),
        _s("funds_released", actors=("escrow_agent",)),
        _s("closed", reads=0, writes=0),
    )
    transitions = (
        _t("t01", "init", "negotiating", "startNegotiation", "buyer"),
        _t("t02", "negotiating", "negotiating", "counterOffer", "seller"),
        _t("t03", "negotiating", "agreed", "acceptOffer", "buyer"),
        _t("t04", "agreed", "contract_drafted", "draftContract", "seller"),
        _t("t05", "contract_drafted", "buyer_signed", "signBuyer", "buyer"),
        _t("t06", "contract_drafted", "seller_signed", "signSeller", "seller"),
        _t("t07", "buyer_signed", "signed", "signSeller", "seller", quorum=2),
        _t("t08", "seller_signed", "signed", "signBuyer", "buyer", quorum=2),
        _t("t09", "signed", "buyer_deposited", "depositBuyer", "buyer", inputs=AMOUNT),
        _t("t10", "signed", "seller_deposited", "depositSeller", "seller", inputs=AMOUNT),
        _t("t11", "buyer_deposited", "escrow_done", "depositSeller", "seller", quorum=2, inputs=AMOUNT),
        _t("t12", "seller_deposited", "escrow_done", "depositBuyer", "buyer", quorum=2, inputs=AMOUNT),
        _t("t13", "escrow_done", "shipped", "shipGoods", "seller"),
        _t("t14", "shipped", "in_transit", "confirmPickup", "carrier"),
        _t("t15", "in_transit", "delivered", "confirmDelivery", "carrier"),
        _t("t16", "delivered", "picked_up", "pickUp", "buyer"),
        _t("t17", "picked_up", "confirmed", "confirmReceipt", "buyer"),
        _t("t18", "picked_up", "disputed", "raiseDispute", "buyer"),
        _t("t19", "confirmed", "settled", "releaseFunds", "escrow_agent", quorum=1),
        _t("t20", "disputed", "settled", "resolveDispute", "escrow_agent", quorum=1),
        _t("t21", "settled", "funds_released", "payout", "escrow_agent"),
        _t("t22", "funds_released", "closed", "closeCase", "seller"),
    )
    return FsmModel(
        initial_state="init",
        states=states,
        transitions=transitions,
    )


def real_estate() -> FsmModel:
    """Property sale with a three-inspector fork (any one inspection
    suffices) and a cash-or-mortgage fork (either path suffices)."""
    states = (
        _s("listed", reads=0, writes=1, actors=("seller",)),
        _s("offer_made", actors=("buyer",)),
        _s("offer_accepted", actors=("seller",)),
        _s("inspection_started", actors=("buyer",)),
        _s("structural_checked", actors=("inspector_a",)),
        _s("electrical_checked", actors=("inspector_b",)),
        _s("plumbing_checked", actors=("inspector_c",)),
        _s("inspection_passed"),
        _s("appraisal_ordered", actors=("lender",)),
        _s("appraisal_done", reads=1, writes=2, actors=("appraiser",)),
        _s("financing_chosen", actors=("buyer",)),
        _s("cash_prepared", actors=("buyer",)),
        _s("mortgage_approved", reads=2, writes=1, actors=("lender",)),
        _s("payment_ready"),
        _s("title_searched", actors=("title_company",)),
        _s("closing_scheduled", actors=("title_company",)),
        _s("deed_transferred", reads=1, writes=2, actors=("seller",)),
        _s("funds_disbursed", actors=("title_company",)),
        _s("sale_closed", reads=1, writes=0),
    )
    transitions = (
        _t("r01", "listed", "offer_made", "makeOffer", "buyer", inputs=AMOUNT),
        _t("r02", "offer_made", "offer_accepted", "acceptOffer", "seller"),
        _t("r03", "offer_accepted", "inspection_started", "orderInspection", "buyer"),
        _t("r04", "inspection_started", "structural_checked", "inspectStructure", "inspector_a"),
        _t("r05", "inspection_started", "electrical_checked", "inspectElectrical", "inspector_b"),
        _t("r06", "inspection_started", "plumbing_checked", "inspectPlumbing", "inspector_c"),
        _t("r07", "structural_checked", "inspection_passed", "approveInspection", "inspector_a", quorum=1),
        _t("r08", "electrical_checked", "inspection_passed", "approveInspection", "inspector_b", quorum=1),
        _t("r09", "plumbing_checked", "inspection_passed", "approveInspection", "inspector_c", quorum=1),
        _t("r10", "inspection_passed", "appraisal_ordered", "orderAppraisal", "lender"),
        _t("r11", "appraisal_ordered", "appraisal_done", "completeAppraisal", "appraiser"),
        _t("r12", "appraisal_done", "financing_chosen", "chooseFinancing", "buyer"),
        _t("r13", "financing_chosen", "cash_prepared", "prepareCash", "buyer"),
        _t("r14", "financing_chosen", "mortgage_approved", "approveMortgage", "lender"),
        _t("r15", "cash_prepared", "payment_ready", "confirmFunds", "buyer", quorum=1),
        _t("r16", "mortgage_approved", "payment_ready", "confirmFunds", "lender", quorum=1),
        _t("r17", "payment_ready", "title_searched", "searchTitle", "title_company"),
        _t("r18", "title_searched", "closing_scheduled", "scheduleClosing", "title_company"),
        _t("r19", "closing_scheduled", "deed_transferred", "transferDeed", "seller"),
        _t("r20", "deed_transferred", "funds_disbursed", "disburseFunds", "title_company"),
        _t("r21", "funds_disbursed", "sale_closed", "closeSale", "title_company"),
    )
    return FsmModel(
        initial_state="listed",
        states=states,
        transitions=transitions,
    )


def badges() -> FsmModel:
    """Credential issuance: a module diamond, a grading chain, and a
    minting chain, each region ending where the next begins."""
    states = (
        _s("enrolled", reads=0, writes=1, actors=("learner",)),
        _s("course_started", actors=("learner",)),
        _s("module_a_done", actors=("learner",)),
        _s("module_b_done", actors=("learner",)),
        _s("course_completed"),
        _s("assessment_submitted", reads=1, writes=2, actors=("learner",)),
        _s("assessment_graded", actors=("instructor",)),
        _s("badge_requested", actors=("learner",)),
        _s("badge_minted", reads=2, writes=2, actors=("issuer",)),
        _s("badge_signed", actors=("issuer",)),
        _s("badge_issued", actors=("issuer",)),
        _s("archived", reads=1, writes=0, actors=("registrar",)),
    )
    transitions = (
        _t("b01", "enrolled", "course_started", "startCourse", "learner"),
        _t("b02", "course_started", "module_a_done", "completeModuleA", "learner"),
        _t("b03", "course_started", "module_b_done", "completeModuleB", "learner"),
        _t("b04", "module_a_done", "course_completed", "completeModuleB", "learner", quorum=2),
        _t("b05", "module_b_done", "course_completed", "completeModuleA", "learner", quorum=2),
        _t("b06", "course_completed", "assessment_submitted", "submitAssessment", "learner"),
        _t("b07", "assessment_submitted", "assessment_graded", "gradeAssessment", "instructor"),
        _t("b08", "assessment_graded", "badge_requested", "requestBadge", "learner"),
        _t("b09", "badge_requested", "badge_minted", "mintBadge", "issuer"),
        _t("b10", "badge_minted", "badge_signed", "signBadge", "issuer"),
        _t("b11", "badge_signed", "badge_issued", "publishBadge", "issuer"),
        _t("b12", "badge_issued", "archived", "archive", "registrar"),
    )
    return FsmModel(
        initial_state="enrolled",
        states=states,
        transitions=transitions,
    )


def inspectors() -> FsmModel:
    """Any-one-of-three merge: an accepted offer goes out to three
    inspection companies and whichever responds first files the report."""
    states = (
        _s("offer_accepted", reads=0, writes=1),
        _s("inspecting_a", actors=("inspector_a",)),
        _s("inspecting_b", actors=("inspector_b",)),
        _s("inspecting_c", actors=("inspector_c",)),
        _s("report_filed"),
    )
    transitions = (
        _t("i1", "offer_accepted", "inspecting_a", "requestInspectionA", "buyer"),
        _t("i2", "offer_accepted", "inspecting_b", "requestInspectionB", "buyer"),
        _t("i3", "offer_accepted", "inspecting_c", "requestInspectionC", "buyer"),
        _t("i4", "inspecting_a", "report_filed", "fileReport", "inspector_a", quorum=1),
        _t("i5", "inspecting_b", "report_filed", "fileReport", "inspector_b", quorum=1),
        _t("i6", "inspecting_c", "report_filed", "fileReport", "inspector_c", quorum=1),
    )
    return FsmModel(initial_state="offer_accepted", states=states, transitions=transitions)


def mortgage_variant() -> FsmModel:
    """Two-branch mortgage approval with unequal branch lengths: the land
    survey is one step, but the appraisal side also needs an insurance
    quote and a financials review before the merge."""
    states = (
        _s("mortgage_requested", reads=0, writes=1),
        _s("land_surveyed", actors=("surveyor",)),
        _s("appraisal_done", actors=("appraiser",)),
        _s("insurance_quoted", actors=("insurer",)),
        _s("financials_reviewed", actors=("lender",)),
        _s("mortgage_approved", actors=("lender",)),
    )
    transitions = (
        _t("m1", "mortgage_requested", "land_surveyed", "surveyLand", "surveyor"),
        _t("m2", "mortgage_requested", "appraisal_done", "orderAppraisal", "appraiser"),
        _t("m3", "appraisal_done", "insurance_quoted", "quoteInsurance", "insurer"),
        _t("m4", "insurance_quoted", "financials_reviewed", "reviewFinancials", "lender"),
        _t("m5", "land_surveyed", "mortgage_approved", "approveMortgage", "lender", quorum=2),
        _t("m6", "financials_reviewed", "mortgage_approved", "approveMortgage", "lender", quorum=2),
    )
    return FsmModel(initial_state="mortgage_requested", states=states, transitions=transitions)


ALL_FIXTURES = {
    "escrow_deposit": escrow_deposit,
    "buyer_seller_escrow": buyer_seller_escrow,
    "real_estate": real_estate,
    "badges": badges,
}
