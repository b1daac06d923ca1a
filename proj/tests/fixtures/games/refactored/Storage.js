function EventQueue() {
    this.pending = [];
}

EventQueue.prototype.add = function (event) {
    this.pending.push(event);
};

EventQueue.prototype.publishEvents = function (handler) {
    var events = this.pending;
    this.pending = [];
    events.forEach(handler);
};

var eventQueue = new EventQueue();
exports.eventQueue = eventQueue;

exports.unsafeLoadGameState = function (just) {
    return function(nothing) {
        return function() {
            eventQueue.add({ type: 'gameState', data: localStorage.getItem('gameState') });
            var result = nothing;
            eventQueue.publishEvents(function (event) {
                if (event.data) {
                    result = just(JSON.parse(event.data));
                }
            });
            return result;
        };
    };
};
