"""Typed errors raised by the scheduling pipeline.

Every error carries the pipeline ``stage`` it belongs to so the CLI can
report it and map it to an exit status.
"""


class ScheduleError(Exception):
    stage = "pipeline"


# -- ingest ---------------------------------------------------------------

class IngestError(ScheduleError):
    stage = "ingest"


class MissingFile(IngestError):
    pass


class MalformedCSV(IngestError):
    pass


class MissingColumn(IngestError):
    pass


class MissingFooter(IngestError):
    pass


class MalformedTime(IngestError):
    pass


class NonIntegerDemand(IngestError):
    pass


class DuplicateRoom(IngestError):
    pass


class NonPositiveCapacity(IngestError):
    pass


class UnknownLevel(IngestError):
    pass


class DuplicateName(IngestError):
    pass


class NonIntegerExperience(IngestError):
    pass


class MalformedMark(IngestError):
    pass


class TotalMismatch(IngestError):
    pass


class ValidationFailed(ScheduleError):
    stage = "validation"

    def __init__(self, report):
        self.report = report
        lines = [str(issue) for issue in report.errors]
        super().__init__("; ".join(lines))


# -- room decision --------------------------------------------------------

class InsufficientCapacity(ScheduleError):
    stage = "room_decision"


# -- personnel decision ---------------------------------------------------

class PersonnelError(ScheduleError):
    stage = "personnel_decision"


class LecturerOverflow(PersonnelError):
    pass


class UnknownSlot(PersonnelError):
    pass


class NoProctors(PersonnelError):
    pass


class Infeasible(PersonnelError):
    def __init__(self, message, shortfalls=None):
        super().__init__(message)
        self.shortfalls = dict(shortfalls or {})


class UnknownTA(PersonnelError):
    pass


# -- crew organization ----------------------------------------------------

class CrewError(ScheduleError):
    stage = "crew_organization"


class InsufficientUndergraduates(CrewError):
    pass


class CrewSizeMismatch(CrewError):
    pass


# -- oracle ---------------------------------------------------------------

class InstanceTooLarge(ScheduleError):
    stage = "oracle"


class DuplicateEvent(PersonnelError):
    pass
