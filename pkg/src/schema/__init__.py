from schema.schema import (
    BandReport,
    BifurcationDiagram,
    BracketResult,
    BracketStep,
    CertificateMethod,
    Classification,
    CommandInfo,
    ConditionACertificate,
    ConstantsRecord,
    DiagramSlice,
    EpsilonLambda,
    EventKind,
    EventRecord,
    ExtremaLadder,
    FiveSymbolSequence,
    FoldReport,
    KneadingVerdict,
    LambdaBRow,
    LambdaBTable,
    LayerReport,
    LayerSuite,
    PeriodicReport,
    PitchforkReport,
    RateFit,
    RunConfig,
    SolutionRecord,
    SpikeRecord,
    SuiteRow,
    SymbolSequence,
    TailReport,
    ZeroRecord,
)

__all__ = [
    "BandReport",
    "BifurcationDiagram",
    "BracketResult",
    "BracketStep",
    "CertificateMethod",
    "Classification",
    "CommandInfo",
    "ConditionACertificate",
    "ConstantsRecord",
    "DiagramSlice",
    "EpsilonLambda",
    "EventKind",
    "EventRecord",
    "ExtremaLadder",
    "FiveSymbolSequence",
    "FoldReport",
    "KneadingVerdict",
    "LambdaBRow",
    "LambdaBTable",
    "LayerReport",
    "LayerSuite",
    "PeriodicReport",
    "PitchforkReport",
    "RateFit",
    "RunConfig",
    "SolutionRecord",
    "SpikeRecord",
    "SuiteRow",
    "SymbolSequence",
    "TailReport",
    "ZeroRecord",
]
